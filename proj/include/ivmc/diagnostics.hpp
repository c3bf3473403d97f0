#ifndef IVMC_DIAGNOSTICS_HPP
#define IVMC_DIAGNOSTICS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "ivmc/envelope.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/rng.hpp"
#include "ivmc/sampler.hpp"

namespace ivmc {

struct acceptance_curve_point {
    std::size_t partition_size;
    double guaranteed_lower_bound;
    double empirical_acceptance;
    std::uint64_t n_trials;
    std::uint64_t n_accepted;
    double cpu_seconds;
};

/// Caps for one empirical acceptance measurement: stop at whichever cap is
/// hit first.
struct sweep_caps {
    std::uint64_t max_accepts = 10'000;
    std::uint64_t max_trials = 100'000;
};

/// Empirical and guaranteed acceptance along a refinement trajectory. One
/// partition is refined incrementally through the ascending `sizes`; each
/// measurement draws with a seed derived from `seed` and the size index.
template <target_function F>
std::vector<acceptance_curve_point> acceptance_sweep(const F& target, const box& domain,
                                                     refine_scheme scheme,
                                                     std::span<const std::size_t> sizes,
                                                     sweep_caps caps, std::uint64_t seed) {
    partition part(target, domain, scheme);
    std::vector<acceptance_curve_point> out;
    out.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < part.size())
            throw invalid_spec("partition sizes must be ascending");
        part.refine(target, sizes[i] - part.size());
        const std::clock_t t0 = std::clock();
        trio_sampler sampler(target, part, derive_seed(seed, i));
        std::uint64_t trials = 0, accepted = 0;
        while (accepted < caps.max_accepts && trials < caps.max_trials) {
            const sample_record rec = sampler.next();
            ++trials;
            accepted += rec.mrs_accepted ? 1 : 0;
        }
        const double cpu = static_cast<double>(std::clock() - t0) / CLOCKS_PER_SEC;
        out.push_back({part.size(), part.acceptance_bounds().lo(),
                       trials > 0 ? static_cast<double>(accepted) / static_cast<double>(trials)
                                  : 0.0,
                       trials, accepted, cpu});
    }
    return out;
}

/// Between/within chain variance decomposition, per coordinate. B is the
/// population variance of the chain means, W the mean within-chain
/// population variance, and the ratio B/W vanishes as chains converge to a
/// common distribution. A zero W with distinct means yields an infinite
/// ratio sentinel.
struct bw_report {
    std::vector<double> between;
    std::vector<double> within;
    std::vector<double> ratio;

    double max_ratio() const {
        double m = 0.0;
        for (double r : ratio) m = std::max(m, r);
        return m;
    }
};

inline bw_report bw_statistic(const std::vector<std::vector<std::vector<double>>>& chains) {
    if (chains.size() < 2) throw insufficient_chains("need at least two chains");
    const std::size_t len = chains[0].size();
    if (len < 2) throw insufficient_chains("chains must have length >= 2");
    for (const auto& c : chains)
        if (c.size() != len) throw insufficient_chains("chains must have equal lengths");
    const std::size_t dim = chains[0][0].size();
    const double m = static_cast<double>(chains.size());
    const double n = static_cast<double>(len);

    bw_report rep;
    rep.between.resize(dim);
    rep.within.resize(dim);
    rep.ratio.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<double> means(chains.size());
        double within = 0.0;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            double s = 0.0;
            for (const auto& x : chains[c]) s += x[k];
            const double mean = s / n;
            means[c] = mean;
            double v = 0.0;
            for (const auto& x : chains[c]) v += (x[k] - mean) * (x[k] - mean);
            within += v / n;
        }
        double grand = 0.0;
        for (double mu : means) grand += mu;
        grand /= m;
        double between = 0.0;
        for (double mu : means) between += (mu - grand) * (mu - grand);
        between /= m;
        rep.between[k] = between;
        rep.within[k] = within / m;
        if (rep.within[k] > 0.0)
            rep.ratio[k] = rep.between[k] / rep.within[k];
        else
            rep.ratio[k] = rep.between[k] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return rep;
}

struct bw_trajectory_point {
    std::size_t step; // prefix length the ratios were computed at
    std::vector<double> ratio;
};

/// B/W ratios along the chains, evaluated at every multiple of `stride`
/// using prefix sums (one pass over the data).
inline std::vector<bw_trajectory_point> bw_trajectory(
    const std::vector<std::vector<std::vector<double>>>& chains, std::size_t stride) {
    if (chains.size() < 2) throw insufficient_chains("need at least two chains");
    const std::size_t len = chains[0].size();
    if (len < 2) throw insufficient_chains("chains must have length >= 2");
    for (const auto& c : chains)
        if (c.size() != len) throw insufficient_chains("chains must have equal lengths");
    if (stride == 0) stride = 1;
    const std::size_t dim = chains[0][0].size();
    const std::size_t m = chains.size();

    std::vector<double> sum(m * dim, 0.0), sumsq(m * dim, 0.0);
    std::vector<bw_trajectory_point> out;
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t k = 0; k < dim; ++k) {
                const double v = chains[c][t][k];
                sum[c * dim + k] += v;
                sumsq[c * dim + k] += v * v;
            }
        const std::size_t n = t + 1;
        if (n < 2 || n % stride != 0) continue;
        bw_trajectory_point pt{n, std::vector<double>(dim)};
        for (std::size_t k = 0; k < dim; ++k) {
            double within = 0.0, mean_sum = 0.0;
            std::vector<double> means(m);
            for (std::size_t c = 0; c < m; ++c) {
                const double mu = sum[c * dim + k] / static_cast<double>(n);
                means[c] = mu;
                within += sumsq[c * dim + k] / static_cast<double>(n) - mu * mu;
                mean_sum += mu;
            }
            within /= static_cast<double>(m);
            const double grand = mean_sum / static_cast<double>(m);
            double between = 0.0;
            for (double mu : means) between += (mu - grand) * (mu - grand);
            between /= static_cast<double>(m);
            pt.ratio[k] = within > 0.0
                              ? between / within
                              : (between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        }
        out.push_back(std::move(pt));
    }
    return out;
}

/// The three coupled estimators measured against a known mean. Per
/// replicate, proposals are drawn until `n_mrs` rejection-sampler accepts;
/// the rejection estimate averages those accepts, the importance estimate
/// self-normalizes over every proposal, and the independent-MH estimate
/// averages the chain state from the first accept onward (earlier steps are
/// burn-in).
struct mse_result {
    double mse_mrs;
    double mse_is;
    double mse_imhs;
    double mean_acceptance;
    std::uint64_t total_proposals;
};

template <target_function F>
mse_result mse_protocol(const F& target, const partition& part, std::size_t n_mrs,
                        std::size_t n_reps, std::span<const double> true_mean,
                        std::uint64_t seed, unsigned workers = 1,
                        std::uint64_t max_proposals_per_rep = 10'000'000) {
    if (n_mrs == 0 || n_reps == 0) throw invalid_spec("n_mrs and n_reps must be >= 1");
    if (true_mean.size() != target.arity())
        throw invalid_spec("true mean dimension does not match the target arity");
    const std::size_t dim = true_mean.size();

    struct rep_out {
        double se_mrs, se_is, se_imhs;
        std::uint64_t proposals;
    };
    std::vector<rep_out> reps(n_reps);

    const auto run_rep = [&](std::size_t j) {
        trio_sampler sampler(target, part, derive_seed(seed, j));
        std::vector<double> sum_mrs(dim, 0.0), sum_is(dim, 0.0), sum_imhs(dim, 0.0);
        std::vector<double> imhs_cur(dim, 0.0);
        double w_total = 0.0;
        std::uint64_t accepted = 0, trials = 0, imhs_count = 0;
        while (accepted < n_mrs) {
            if (trials >= max_proposals_per_rep)
                throw error("mse_protocol: acceptance too low to reach the accept quota");
            const sample_record rec = sampler.next();
            ++trials;
            if (rec.imhs_accepted) imhs_cur = rec.point;
            for (std::size_t k = 0; k < dim; ++k)
                sum_is[k] += rec.importance_weight * rec.point[k];
            w_total += rec.importance_weight;
            if (rec.mrs_accepted) {
                ++accepted;
                for (std::size_t k = 0; k < dim; ++k) sum_mrs[k] += rec.point[k];
            }
            if (accepted > 0) { // at or past the first accept
                ++imhs_count;
                for (std::size_t k = 0; k < dim; ++k) sum_imhs[k] += imhs_cur[k];
            }
        }
        double se_mrs = 0.0, se_is = 0.0, se_imhs = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d_mrs = sum_mrs[k] / static_cast<double>(accepted) - true_mean[k];
            const double d_is = sum_is[k] / w_total - true_mean[k];
            const double d_imhs = sum_imhs[k] / static_cast<double>(imhs_count) - true_mean[k];
            se_mrs += d_mrs * d_mrs;
            se_is += d_is * d_is;
            se_imhs += d_imhs * d_imhs;
        }
        reps[j] = {se_mrs, se_is, se_imhs, trials};
    };

    if (workers <= 1) {
        for (std::size_t j = 0; j < n_reps; ++j) run_rep(j);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t j = next.fetch_add(1);
                    if (j >= n_reps) return;
                    try {
                        run_rep(j);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(n_reps);
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    mse_result res{0.0, 0.0, 0.0, 0.0, 0};
    for (const rep_out& r : reps) {
        res.mse_mrs += r.se_mrs;
        res.mse_is += r.se_is;
        res.mse_imhs += r.se_imhs;
        res.mean_acceptance +=
            static_cast<double>(n_mrs) / static_cast<double>(r.proposals);
        res.total_proposals += r.proposals;
    }
    const double nr = static_cast<double>(n_reps);
    res.mse_mrs /= nr;
    res.mse_is /= nr;
    res.mse_imhs /= nr;
    res.mean_acceptance /= nr;
    return res;
}

} // namespace ivmc

#endif
