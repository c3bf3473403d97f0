#ifndef IVMC_SAMPLER_HPP
#define IVMC_SAMPLER_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ivmc/alias.hpp"
#include "ivmc/box.hpp"
#include "ivmc/envelope.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/rng.hpp"

namespace ivmc {

/// One proposed point together with everything the three coupled samplers
/// need: its importance weight, the independent-MH accept mark, and the
/// rejection-sampler accept mark.
struct sample_record {
    std::vector<double> point;
    double proposed_height;    // H ~ Uniform[0, envelope_value]
    double target_value;       // p*(point)
    double envelope_value;     // envelope height of the owning box
    double importance_weight;  // p*(point) / envelope_value, up to one global constant
    bool mrs_accepted;
    bool imhs_accepted;
};

struct proposal {
    std::vector<double> point;
    std::size_t box_index;
};

/// One draw from the partition proposal: the alias table picks a box with
/// probability proportional to volume * upper bound, then the point is
/// uniform in that box. Boxes own their lower faces (coordinates are drawn
/// in [lo, hi)), so the tiling is an exact measurable partition up to the
/// domain's upper faces. Consumes exactly 2 + n uniforms.
inline proposal propose(const alias_table& table, const partition& part, rng& r) {
    const double u_col = r.uniform01();
    const double u_coin = r.uniform01();
    proposal prop;
    prop.box_index = table.draw(u_col, u_coin);
    const box& region = part.boxes()[prop.box_index].region;
    prop.point.resize(region.size());
    for (std::size_t k = 0; k < prop.point.size(); ++k) {
        const interval& side = region[k];
        double c = side.lo() + r.uniform01() * (side.hi() - side.lo());
        if (c > side.hi()) c = side.hi();
        prop.point[k] = c;
    }
    return prop;
}

/// Makes the box-sampling weights v * max(upper, 0) for a partition.
inline std::vector<double> proposal_weights(const partition& part) {
    std::vector<double> w;
    w.reserve(part.size());
    for (const labeled_box& b : part.boxes()) w.push_back(b.volume * b.upper);
    return w;
}

/// Alias table over the partition's box-sampling distribution.
inline alias_table build_alias(const partition& part) {
    return alias_table(proposal_weights(part));
}

/// Draws the coupled sampler trio from a frozen partition: every proposal
/// is emitted with its importance weight, an independent-MH accept mark and
/// a rejection accept mark, all on one shared proposal stream.
///
/// The RNG consumption order per proposal is fixed: alias column uniform,
/// alias coin, n box-coordinate uniforms, height uniform, MH uniform. The
/// stream is bit-reproducible given (target, partition, seed).
template <target_function F>
class trio_sampler {
  public:
    trio_sampler(const F& target, const partition& part, std::uint64_t seed)
        : target_(target), part_(part), rng_(seed), table_(proposal_weights(part)) {}

    sample_record next() {
        proposal prop = propose(table_, part_, rng_);
        const labeled_box& cell = part_.boxes()[prop.box_index];

        sample_record rec;
        rec.point = std::move(prop.point);
        rec.envelope_value = cell.upper;
        rec.proposed_height = rng_.uniform01() * rec.envelope_value;
        try {
            rec.target_value = target_.eval_point(rec.point);
        } catch (const eval_domain_error& e) {
            std::string where;
            for (double c : rec.point) where += (where.empty() ? "(" : ", ") + std::to_string(c);
            throw eval_domain_error(std::string(e.what()) + " at proposal " + where + ")");
        }
        if (!(rec.target_value <= rec.envelope_value))
            throw envelope_violation("target exceeds its envelope: enclosure broken");
        rec.mrs_accepted = rec.proposed_height <= rec.target_value;
        rec.importance_weight =
            rec.envelope_value > 0.0 ? rec.target_value / rec.envelope_value : 0.0;

        const double u_mh = rng_.uniform01();
        if (!has_state_) {
            rec.imhs_accepted = true; // the first proposal starts the chain
            has_state_ = true;
            state_ratio_ = rec.importance_weight;
        } else if (state_ratio_ == 0.0 ||
                   u_mh * state_ratio_ <= rec.importance_weight) {
            rec.imhs_accepted = true;
            state_ratio_ = rec.importance_weight;
        } else {
            rec.imhs_accepted = false;
        }
        return rec;
    }

    const alias_table& table() const { return table_; }

  private:
    const F& target_;
    const partition& part_;
    rng rng_;
    alias_table table_;
    bool has_state_ = false;
    double state_ratio_ = 0.0;
};

/// Draws a fixed number of coupled-trio proposals as a batch.
template <target_function F>
std::vector<sample_record> draw_trio(const F& target, const partition& part,
                                     std::size_t n_proposals, std::uint64_t seed) {
    trio_sampler sampler(target, part, seed);
    std::vector<sample_record> out;
    out.reserve(n_proposals);
    for (std::size_t i = 0; i < n_proposals; ++i) out.push_back(sampler.next());
    return out;
}

/// Local Metropolis-Hastings chain with a symmetric uniform-cube proposal
/// of side `cube_side` centered at the current state. Proposals outside the
/// domain are rejected (the shape is zero there); the acceptance ratio
/// reduces to min(1, p*(proposal)/p*(current)). Returns the chain including
/// the start, so n_steps + 1 points.
template <target_function F>
std::vector<std::vector<double>> lmhs_run(const F& target, const box& domain,
                                          std::span<const double> start, double cube_side,
                                          std::size_t n_steps, std::uint64_t seed) {
    if (!domain.contains(start)) throw out_of_domain("chain start outside the domain");
    rng r(seed);
    std::vector<std::vector<double>> chain;
    chain.reserve(n_steps + 1);
    std::vector<double> cur(start.begin(), start.end());
    chain.push_back(cur);
    double cur_p = target.eval_point(cur);
    std::vector<double> prop(cur.size());
    for (std::size_t step = 0; step < n_steps; ++step) {
        for (std::size_t k = 0; k < cur.size(); ++k)
            prop[k] = cur[k] + (r.uniform01() - 0.5) * cube_side;
        const double u = r.uniform01(); // consumed on every step, in or out
        if (domain.contains(prop)) {
            const double p = target.eval_point(prop);
            if (u * cur_p <= p) {
                cur = prop;
                cur_p = p;
            }
        }
        chain.push_back(cur);
    }
    return chain;
}

} // namespace ivmc

#endif
