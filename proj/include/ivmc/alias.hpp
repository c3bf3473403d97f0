#ifndef IVMC_ALIAS_HPP
#define IVMC_ALIAS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ivmc/errors.hpp"

namespace ivmc {

/// Walker/Vose alias table over a finite weight vector: O(n) preprocessing,
/// O(1) per draw. Immutable after construction.
class alias_table {
  public:
    explicit alias_table(std::span<const double> weights) {
        const std::size_t n = weights.size();
        if (n == 0) throw degenerate_mass("alias table over an empty weight vector");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw invalid_spec("alias weights must be nonnegative");
            total += w;
        }
        if (!(total > 0.0) || !std::isfinite(total))
            throw degenerate_mass("alias weights sum to zero or overflow");

        prob_.assign(n, 1.0);
        alias_.resize(n);
        std::vector<double> scaled(n);
        std::vector<std::uint32_t> small, large;
        for (std::size_t i = 0; i < n; ++i) {
            alias_[i] = static_cast<std::uint32_t>(i);
            scaled[i] = weights[i] / total * static_cast<double>(n);
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            const std::uint32_t s = small.back();
            const std::uint32_t l = large.back();
            small.pop_back();
            large.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        // leftovers are numerically 1
        for (std::uint32_t i : small) prob_[i] = 1.0;
        for (std::uint32_t i : large) prob_[i] = 1.0;
    }

    /// Draw from two independent uniforms in [0, 1): the first picks a
    /// column, the second flips the alias coin.
    std::size_t draw(double u_column, double u_coin) const {
        std::size_t k = static_cast<std::size_t>(u_column * static_cast<double>(prob_.size()));
        if (k >= prob_.size()) k = prob_.size() - 1;
        return u_coin < prob_[k] ? k : alias_[k];
    }

    std::size_t size() const { return prob_.size(); }

    /// Probability the table actually assigns to index i (reconstruction of
    /// the normalized input weight up to accumulation error).
    double implied_probability(std::size_t i) const {
        double p = prob_[i];
        for (std::size_t j = 0; j < prob_.size(); ++j)
            if (j != i && alias_[j] == i) p += 1.0 - prob_[j];
        return p / static_cast<double>(prob_.size());
    }

  private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

} // namespace ivmc

#endif
