#ifndef IVMC_ENVELOPE_HPP
#define IVMC_ENVELOPE_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

#include "ivmc/box.hpp"
#include "ivmc/csv.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/interval.hpp"

namespace ivmc {

/// Anything that can be evaluated at a point and enclosed over a box.
template <typename F>
concept target_function = requires(const F& f, std::span<const double> x, const box& b) {
    { f.arity() } -> std::convertible_to<std::size_t>;
    { f.eval_point(x) } -> std::convertible_to<double>;
    { f.eval_box(b) } -> std::convertible_to<interval>;
};

/// Which box the next refinement step bisects: the one with the largest
/// volume, the largest range-enclosure diameter, or the largest product of
/// the two.
enum class refine_scheme : std::uint8_t { volume, range, integral };

inline const char* name_of(refine_scheme s) {
    switch (s) {
        case refine_scheme::volume: return "volume";
        case refine_scheme::range: return "range";
        case refine_scheme::integral: return "integral";
    }
    return "?";
}

inline refine_scheme parse_scheme(std::string_view name) {
    if (name == "volume") return refine_scheme::volume;
    if (name == "range") return refine_scheme::range;
    if (name == "integral") return refine_scheme::integral;
    throw invalid_spec("unknown refinement scheme '" + std::string(name) +
                       "' (expected volume, range or integral)");
}

/// One cell of the partition with its range enclosure. `upper` is the
/// envelope height over the cell; target shapes are nonnegative, so both
/// contributions clamp the raw enclosure at zero (a raw extension may dip
/// below zero without breaking containment).
struct labeled_box {
    box region;
    interval enclosure;
    double volume;
    double upper; // max(enclosure.hi, 0)
    double lower; // max(enclosure.lo, 0), <= upper

    labeled_box(box r, interval enc, double vol)
        : region(std::move(r)), enclosure(enc), volume(vol),
          upper(std::max(enc.hi(), 0.0)), lower(std::max(enc.lo(), 0.0)) {}

    double priority(refine_scheme s) const {
        switch (s) {
            case refine_scheme::volume: return volume;
            case refine_scheme::range: return diameter(enclosure);
            case refine_scheme::integral: return volume * diameter(enclosure);
        }
        return 0.0;
    }
};

/// Adaptive partition of a domain box with per-cell range enclosures. The
/// piecewise-constant upper bounds form an envelope of the target over the
/// whole domain; refinement bisects the top box of a priority queue on its
/// widest side and can only tighten the envelope.
///
/// Refinement is single-writer; a partition that is no longer refined is
/// immutable and safe to share across sampling threads.
class partition {
  public:
    template <target_function F>
    partition(const F& target, box domain, refine_scheme scheme)
        : domain_(std::move(domain)), scheme_(scheme) {
        for (const auto& side : domain_)
            if (!(diameter(side) > 0.0))
                throw invalid_spec("domain sides must have lo < hi");
        const interval enc = target.eval_box(domain_);
        if (enc.hi() == detail::inf)
            throw unbounded_enclosure("target enclosure has no finite upper bound");
        boxes_.emplace_back(domain_, enc, box_volume(domain_));
        upper_sum_ = boxes_[0].volume * boxes_[0].upper;
        lower_sum_ = boxes_[0].volume * boxes_[0].lower;
        peak_scale_ = upper_sum_;
        enqueue(0);
    }

    /// Pops the scheme's top box, bisects it on its widest side, and
    /// re-encloses both halves; repeats `steps` times. Each step grows the
    /// partition by one box. Returns the number of steps actually taken
    /// (fewer when every box has shrunk to machine width).
    template <target_function F>
    std::size_t refine(const F& target, std::size_t steps) {
        std::size_t done = 0;
        while (done < steps && !queue_.empty()) {
            const pq_entry top = queue_.top();
            queue_.pop();
            const double parent_upper = boxes_[top.index].volume * boxes_[top.index].upper;
            const double parent_lower = boxes_[top.index].volume * boxes_[top.index].lower;
            const std::size_t axis = widest_bisectable_axis(boxes_[top.index].region);
            auto [left, right] = bisect(boxes_[top.index].region, axis);
            const interval enc_l = target.eval_box(left);
            const interval enc_r = target.eval_box(right);
            const double vol_l = box_volume(left);
            const double vol_r = box_volume(right);
            labeled_box lb_l(std::move(left), enc_l, vol_l);
            labeled_box lb_r(std::move(right), enc_r, vol_r);

            upper_sum_ += lb_l.volume * lb_l.upper + lb_r.volume * lb_r.upper - parent_upper;
            lower_sum_ += lb_l.volume * lb_l.lower + lb_r.volume * lb_r.lower - parent_lower;
            if (upper_sum_ < lower_sum_) upper_sum_ = lower_sum_;
            if (upper_sum_ > peak_scale_) peak_scale_ = upper_sum_;

            boxes_[top.index] = std::move(lb_l);
            boxes_.push_back(std::move(lb_r));
            enqueue(top.index);
            enqueue(boxes_.size() - 1);
            ++done;
        }
        // incremental updates cancel catastrophically once the mass has
        // fallen far below its peak; rebuild exactly when that happens
        if (upper_sum_ < 1e-3 * peak_scale_) rebuild_sums();
        return done;
    }

    /// Envelope height at x: the upper bound of the lowest-indexed box
    /// containing x (boundary points belong to every adjacent closed box;
    /// any of their upper bounds dominates the target there).
    double envelope_at(std::span<const double> x) const {
        for (const labeled_box& b : boxes_)
            if (b.region.contains(x)) return b.upper;
        throw out_of_domain("point lies outside the partitioned domain");
    }

    /// Guaranteed enclosure of the acceptance probability. The lower
    /// endpoint uses only enclosure sums; the upper endpoint is 1 in the
    /// absence of sharper information.
    interval acceptance_bounds() const {
        if (!(upper_sum_ > 0.0))
            throw degenerate_mass("envelope mass is zero");
        const double lb = std::clamp(detail::div_lo(lower_sum_, upper_sum_), 0.0, 1.0);
        return interval(lb, 1.0);
    }

    std::size_t size() const { return boxes_.size(); }
    const std::vector<labeled_box>& boxes() const { return boxes_; }
    const box& domain() const { return domain_; }
    refine_scheme scheme() const { return scheme_; }

    /// Envelope mass: sum of volume * upper over all boxes.
    double upper_sum() const { return upper_sum_; }
    double lower_sum() const { return lower_sum_; }

    /// One row per box: per-axis lo/hi, enclosure lo/hi, priority key.
    void dump_csv(std::ostream& out) const {
        out << "# scheme=" << name_of(scheme_) << " boxes=" << boxes_.size() << "\n";
        out << "#";
        for (std::size_t k = 0; k < domain_.size(); ++k)
            out << " x" << (k + 1) << "_lo x" << (k + 1) << "_hi";
        out << " enc_lo enc_hi priority\n";
        for (const labeled_box& b : boxes_) {
            for (std::size_t k = 0; k < b.region.size(); ++k)
                out << format_double(b.region[k].lo()) << ","
                    << format_double(b.region[k].hi()) << ",";
            out << format_double(b.enclosure.lo()) << "," << format_double(b.enclosure.hi())
                << "," << format_double(b.priority(scheme_)) << "\n";
        }
    }

  private:
    struct pq_entry {
        double key;
        std::uint64_t seq; // insertion order; older boxes win ties
        std::uint32_t index;
    };
    struct pq_less {
        bool operator()(const pq_entry& a, const pq_entry& b) const {
            if (a.key != b.key) return a.key < b.key;
            return a.seq > b.seq;
        }
    };

    void enqueue(std::size_t index) {
        if (!is_bisectable(boxes_[index].region)) return; // kept, but never split again
        queue_.push(pq_entry{boxes_[index].priority(scheme_), next_seq_++,
                             static_cast<std::uint32_t>(index)});
    }

    void rebuild_sums() {
        double up = 0.0, up_c = 0.0, low = 0.0, low_c = 0.0;
        const auto neumaier = [](double& sum, double& comp, double term) {
            const double t = sum + term;
            if (std::fabs(sum) >= std::fabs(term))
                comp += (sum - t) + term;
            else
                comp += (term - t) + sum;
            sum = t;
        };
        for (const labeled_box& b : boxes_) {
            neumaier(up, up_c, b.volume * b.upper);
            neumaier(low, low_c, b.volume * b.lower);
        }
        upper_sum_ = up + up_c;
        lower_sum_ = low + low_c;
        if (upper_sum_ < lower_sum_) upper_sum_ = lower_sum_;
        peak_scale_ = std::max(upper_sum_, 1e-300);
    }

    box domain_;
    refine_scheme scheme_;
    std::vector<labeled_box> boxes_;
    std::priority_queue<pq_entry, std::vector<pq_entry>, pq_less> queue_;
    double upper_sum_ = 0.0;
    double lower_sum_ = 0.0;
    double peak_scale_ = 0.0;
    std::uint64_t next_seq_ = 0;
};

} // namespace ivmc

#endif
