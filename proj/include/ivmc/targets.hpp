#ifndef IVMC_TARGETS_HPP
#define IVMC_TARGETS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ivmc/box.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/expr.hpp"
#include "ivmc/interval.hpp"
#include "ivmc/quadrature.hpp"

namespace ivmc::targets {

// ---------------------------------------------------------------------------
// Specs

struct gaussian_component {
    double weight;
    std::vector<double> mean;
    std::vector<double> stdev;
};

/// Mixture of axis-aligned Gaussian densities truncated to `domain`.
struct gaussian_mixture_spec {
    std::vector<gaussian_component> components;
    box domain;
};

/// Highly multimodal 2-D shape exp(-E(x1,x2)/T) built from two cosine sums
/// and a quadratic well; T is the temperature.
struct levy_spec {
    double temperature = 40.0;
    box domain = box(interval(-100.0, 100.0), 2);
};

/// Two isotropic 3-D Gaussian bumps with very different scales, weighted by
/// 1/sigma^3 so both carry equal mass: a wide haystack and a sharp needle.
struct needle_spec {
    std::array<double, 3> mean1{0.0, 0.0, 0.0};
    std::array<double, 3> mean2{1.0, 1.0, 1.0};
    double stdev1 = 1.0;
    double stdev2 = 0.01;
    box domain = box(interval(-10.0, 10.0), 3);
};

/// exp of the negated D-dimensional Rosenbrock function: a curved ridge.
struct rosenbrock_spec {
    std::size_t dimension = 2;
    box domain = box(interval(-10.0, 10.0), 2);
};

/// Cone of height H and radius R = 10^-radius_exponent centered at
/// `center`, mixed m:(1-m) with a uniform brim over the domain.
struct witchs_hat_spec {
    std::size_t dimension = 2;
    std::vector<double> center = {2.0, 2.0};
    int radius_exponent = 0;
    double mixing = 0.05;
    box domain = box(interval(-10.0, 10.0), 2);
};

// ---------------------------------------------------------------------------
// Validation

inline void validate(const gaussian_mixture_spec& s) {
    if (s.components.empty()) throw invalid_spec("mixture needs at least one component");
    for (const auto& c : s.components) {
        if (!(c.weight >= 0.0)) throw invalid_spec("mixture weight must be >= 0");
        if (c.mean.size() != s.domain.size() || c.stdev.size() != s.domain.size())
            throw invalid_spec("component dimension does not match the domain");
        for (double sd : c.stdev)
            if (!(sd > 0.0)) throw invalid_spec("stdev must be > 0");
    }
}

inline void validate(const levy_spec& s) {
    if (!(s.temperature > 0.0) || !std::isfinite(s.temperature))
        throw invalid_spec("temperature must be finite and positive");
    if (s.domain.size() != 2) throw invalid_spec("levy target is 2-dimensional");
}

inline void validate(const needle_spec& s) {
    if (!(s.stdev1 > 0.0) || !(s.stdev2 > 0.0)) throw invalid_spec("stdevs must be > 0");
    if (s.domain.size() != 3) throw invalid_spec("needle target is 3-dimensional");
}

inline void validate(const rosenbrock_spec& s) {
    if (s.dimension < 2) throw invalid_spec("rosenbrock needs dimension >= 2");
    if (s.domain.size() != s.dimension) throw invalid_spec("domain dimension mismatch");
}

inline void validate(const witchs_hat_spec& s) {
    if (s.dimension < 1) throw invalid_spec("witchs hat needs dimension >= 1");
    if (s.center.size() != s.dimension || s.domain.size() != s.dimension)
        throw invalid_spec("domain/center dimension mismatch");
    if (!(s.mixing >= 0.0 && s.mixing <= 1.0)) throw invalid_spec("mixing must be in [0, 1]");
}

// ---------------------------------------------------------------------------
// DAG builders

inline expr_dag build_target(const gaussian_mixture_spec& s) {
    validate(s);
    const std::size_t n = s.domain.size();
    expr_dag::builder b(n);
    const double inv_sqrt_2pi = 0.39894228040143268;
    std::uint32_t sum = 0;
    bool first = true;
    for (const auto& c : s.components) {
        double coef = c.weight;
        for (double sd : c.stdev) coef *= inv_sqrt_2pi / sd;
        std::uint32_t arg = 0;
        bool first_axis = true;
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint32_t d = b.sub(b.variable(k), b.constant(c.mean[k]));
            const std::uint32_t t =
                b.mul(b.pow(d, 2), b.constant(1.0 / (2.0 * c.stdev[k] * c.stdev[k])));
            arg = first_axis ? t : b.add(arg, t);
            first_axis = false;
        }
        const std::uint32_t term = b.mul(b.constant(coef), b.call(std_fn::exp, b.neg(arg)));
        sum = first ? term : b.add(sum, term);
        first = false;
    }
    return b.take(sum);
}

inline expr_dag build_target(const levy_spec& s) {
    validate(s);
    expr_dag::builder b(2);
    const std::uint32_t x1 = b.variable(0);
    const std::uint32_t x2 = b.variable(1);
    std::uint32_t sum_a = 0, sum_b = 0;
    for (int i = 1; i <= 5; ++i) {
        const std::uint32_t ta = b.mul(
            b.constant(i),
            b.call(std_fn::cos, b.add(b.mul(b.constant(i - 1), x1), b.constant(i))));
        const std::uint32_t tb = b.mul(
            b.constant(i),
            b.call(std_fn::cos, b.add(b.mul(b.constant(i + 1), x2), b.constant(i))));
        sum_a = (i == 1) ? ta : b.add(sum_a, ta);
        sum_b = (i == 1) ? tb : b.add(sum_b, tb);
    }
    const std::uint32_t well = b.add(b.pow(b.add(x1, b.constant(1.42513)), 2),
                                     b.pow(b.add(x2, b.constant(0.80032)), 2));
    const std::uint32_t energy = b.add(b.mul(sum_a, sum_b), well);
    return b.take(b.call(std_fn::exp, b.div(b.neg(energy), b.constant(s.temperature))));
}

inline expr_dag build_target(const needle_spec& s) {
    validate(s);
    expr_dag::builder b(3);
    const auto bump = [&](const std::array<double, 3>& mean, double sd) {
        std::uint32_t arg = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const std::uint32_t d = b.sub(b.variable(k), b.constant(mean[k]));
            const std::uint32_t t = b.pow(d, 2);
            arg = (k == 0) ? t : b.add(arg, t);
        }
        arg = b.mul(arg, b.constant(1.0 / (2.0 * sd * sd)));
        return b.mul(b.constant(1.0 / (sd * sd * sd)), b.call(std_fn::exp, b.neg(arg)));
    };
    return b.take(b.add(bump(s.mean1, s.stdev1), bump(s.mean2, s.stdev2)));
}

inline expr_dag build_target(const rosenbrock_spec& s) {
    validate(s);
    expr_dag::builder b(s.dimension);
    std::uint32_t sum = 0;
    for (std::size_t i = 1; i < s.dimension; ++i) {
        const std::uint32_t prev = b.variable(i - 1);
        const std::uint32_t cur = b.variable(i);
        const std::uint32_t t1 =
            b.mul(b.constant(100.0), b.pow(b.sub(cur, b.pow(prev, 2)), 2));
        const std::uint32_t t2 = b.pow(b.sub(b.constant(1.0), prev), 2);
        const std::uint32_t term = b.add(t1, t2);
        sum = (i == 1) ? term : b.add(sum, term);
    }
    return b.take(b.call(std_fn::exp, b.neg(sum)));
}

// ---------------------------------------------------------------------------
// Witch's hat

/// The hat contains the non-elementary indicator 1{|X-C| <= R}, so it is not
/// an expr_dag. The box extension does case analysis on the enclosure of
/// |X-C|: entirely inside the ball uses the cone+brim formula, entirely
/// outside uses the brim alone, and a straddling box takes the hull of both
/// branches. Containment is preserved in every case.
class witchs_hat_target {
  public:
    explicit witchs_hat_target(const witchs_hat_spec& s)
        : center_(s.center), mixing_(s.mixing) {
        validate(s);
        radius_ = std::pow(10.0, -s.radius_exponent);
        const std::size_t d = s.dimension;

        interval gamma = gamma_half_enclosure(d);
        interval pi_pow = pi_power_enclosure(d);
        const interval num =
            mul(gamma, interval(static_cast<double>(d) * static_cast<double>(d + 1)));
        const interval den = mul(interval(2.0), mul(pi_pow, pow_int(interval(radius_), d)));
        height_enc_ = div(num, den);
        height_ = midpoint(height_enc_);

        interval vol(1.0);
        for (const auto& side : s.domain) vol = mul(vol, interval(diameter(side)));
        brim_enc_ = div(interval(1.0 - mixing_), vol);
        brim_ = midpoint(brim_enc_);
        mh_enc_ = mul(interval(mixing_), height_enc_);
        mh_ = midpoint(mh_enc_);
    }

    std::size_t arity() const { return center_.size(); }
    double hat_height() const { return height_; }
    double hat_radius() const { return radius_; }
    double brim_level() const { return brim_; }

    double eval_point(std::span<const double> x) const {
        if (x.size() != center_.size()) throw error("point dimension mismatch");
        double s2 = 0.0;
        for (std::size_t k = 0; k < center_.size(); ++k) {
            const double d = x[k] - center_[k];
            s2 += d * d;
        }
        const double dist = std::sqrt(s2);
        if (dist > radius_) return brim_;
        return mh_ * (1.0 - dist / radius_) + brim_;
    }

    interval eval_box(const box& X) const {
        if (X.size() != center_.size()) throw error("box dimension mismatch");
        interval s2(0.0);
        for (std::size_t k = 0; k < center_.size(); ++k)
            s2 = add(s2, pow_int(sub(X[k], interval(center_[k])), 2));
        const interval dist = apply(std_fn::sqrt, s2);
        if (dist.lo() > radius_) return brim_enc_;
        if (dist.hi() <= radius_) return cone_plus_brim(dist);
        return hull(cone_plus_brim(interval(dist.lo(), radius_)), brim_enc_);
    }

  private:
    interval cone_plus_brim(const interval& dist) const {
        const interval slope = sub(interval(1.0), div(dist, interval(radius_)));
        return add(mul(mh_enc_, slope), brim_enc_);
    }

    // Enclosure of Gamma(d/2): exact factorials for even d, a sqrt(pi)
    // multiple for odd d.
    static interval gamma_half_enclosure(std::size_t d) {
        if (d % 2 == 0) {
            double f = 1.0;
            for (std::size_t k = 2; k < d / 2; ++k) f *= static_cast<double>(k);
            return interval(f); // (d/2 - 1)!, exact in double for the sizes used
        }
        const std::size_t k = (d - 1) / 2;
        double num = 1.0, den = 1.0;
        for (std::size_t i = 1; i <= 2 * k; ++i) num *= static_cast<double>(i);
        for (std::size_t i = 1; i <= k; ++i) den *= 4.0 * static_cast<double>(i);
        const interval sqrt_pi =
            apply(std_fn::sqrt, interval(detail::pi_dn, detail::pi_up));
        return mul(div(interval(num), interval(den)), sqrt_pi);
    }

    static interval pi_power_enclosure(std::size_t d) {
        const interval pi(detail::pi_dn, detail::pi_up);
        interval p = pow_int(pi, static_cast<long long>(d / 2));
        if (d % 2 != 0) p = mul(p, apply(std_fn::sqrt, pi));
        return p;
    }

    std::vector<double> center_;
    double mixing_;
    double radius_ = 1.0;
    double height_ = 0.0;
    double brim_ = 0.0;
    double mh_ = 0.0;
    interval height_enc_;
    interval brim_enc_;
    interval mh_enc_;
};

inline witchs_hat_target build_target(const witchs_hat_spec& s) { return witchs_hat_target(s); }

// ---------------------------------------------------------------------------
// Reference densities: direct formula evaluation, independent of the DAG
// evaluation path. These back the quadrature oracles and tests.

inline double reference_density(const gaussian_mixture_spec& s, std::span<const double> x) {
    const double inv_sqrt_2pi = 0.39894228040143268;
    double total = 0.0;
    for (const auto& c : s.components) {
        double t = c.weight;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double z = (x[k] - c.mean[k]) / c.stdev[k];
            t *= inv_sqrt_2pi / c.stdev[k] * std::exp(-0.5 * z * z);
        }
        total += t;
    }
    return total;
}

inline double reference_density(const levy_spec& s, std::span<const double> x) {
    double sa = 0.0, sb = 0.0;
    for (int i = 1; i <= 5; ++i) {
        sa += i * std::cos((i - 1) * x[0] + i);
        sb += i * std::cos((i + 1) * x[1] + i);
    }
    const double e = sa * sb + (x[0] + 1.42513) * (x[0] + 1.42513) +
                     (x[1] + 0.80032) * (x[1] + 0.80032);
    return std::exp(-e / s.temperature);
}

inline double reference_density(const needle_spec& s, std::span<const double> x) {
    const auto bump = [&](const std::array<double, 3>& mean, double sd) {
        double s2 = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double d = x[k] - mean[k];
            s2 += d * d;
        }
        return std::exp(-0.5 * s2 / (sd * sd)) / (sd * sd * sd);
    };
    return bump(s.mean1, s.stdev1) + bump(s.mean2, s.stdev2);
}

inline double reference_density(const rosenbrock_spec& s, std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 1; i < s.dimension; ++i) {
        const double a = x[i] - x[i - 1] * x[i - 1];
        const double c = 1.0 - x[i - 1];
        sum += 100.0 * a * a + c * c;
    }
    return std::exp(-sum);
}

inline double reference_density(const witchs_hat_spec& s, std::span<const double> x) {
    return witchs_hat_target(s).eval_point(x);
}

// ---------------------------------------------------------------------------
// Quadrature oracles for the true mean (dimension <= 3)

namespace detail {

// Means of separable Gaussian-bump mixtures via per-axis standardized
// Simpson quadrature. A component is coef * prod_k exp(-z_k^2/2) with
// z_k = (x_k - mean_k)/stdev_k; any density normalization lives in coef.
struct separable_component {
    double coef;
    std::vector<double> mean;
    std::vector<double> stdev;
};

inline std::vector<double> separable_mixture_mean(const std::vector<separable_component>& comps,
                                                  const box& domain, std::size_t n_grid) {
    const std::size_t n = domain.size();
    std::vector<double> mean_num(n, 0.0);
    double mass_total = 0.0;
    for (const auto& c : comps) {
        std::vector<double> mass(n), moment(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double za = (domain[k].lo() - c.mean[k]) / c.stdev[k];
            const double zb = (domain[k].hi() - c.mean[k]) / c.stdev[k];
            const auto [m0, m1] = gauss_kernel_moments(za, zb, n_grid);
            mass[k] = m0 * c.stdev[k];
            moment[k] = (c.mean[k] * m0 + c.stdev[k] * m1) * c.stdev[k];
        }
        double total = c.coef;
        for (std::size_t k = 0; k < n; ++k) total *= mass[k];
        mass_total += total;
        for (std::size_t k = 0; k < n; ++k) {
            if (mass[k] == 0.0) continue;
            mean_num[k] += total / mass[k] * moment[k];
        }
    }
    if (mass_total <= 0.0) throw degenerate_mass("target mass vanished on the domain");
    for (double& v : mean_num) v /= mass_total;
    return mean_num;
}

// Tensor-grid Simpson mean for densities without separable structure.
template <typename F>
std::vector<double> tensor_grid_mean(F&& density, const box& domain, std::size_t n_grid) {
    const std::size_t n = domain.size();
    if (n > 3) throw dimension_too_large("tensor-grid quadrature supports dimension <= 3");
    std::size_t g = n_grid < 2 ? 2 : n_grid;
    if (g % 2 != 0) ++g;
    std::vector<double> h(n), lo(n);
    for (std::size_t k = 0; k < n; ++k) {
        lo[k] = domain[k].lo();
        h[k] = diameter(domain[k]) / static_cast<double>(g);
    }
    const auto weight1 = [&](std::size_t i) {
        if (i == 0 || i == g) return 1.0;
        return (i % 2 != 0) ? 4.0 : 2.0;
    };
    std::vector<double> num(n, 0.0);
    double den = 0.0;
    std::vector<double> x(n);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        double w = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = lo[k] + h[k] * static_cast<double>(idx[k]);
            w *= weight1(idx[k]);
        }
        const double f = density(std::span<const double>(x)) * w;
        den += f;
        for (std::size_t k = 0; k < n; ++k) num[k] += f * x[k];
        std::size_t k = 0;
        while (k < n && ++idx[k] > g) {
            idx[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    if (den <= 0.0) throw degenerate_mass("target mass vanished on the domain");
    for (std::size_t k = 0; k < n; ++k) num[k] /= den;
    return num;
}

} // namespace detail

inline std::vector<double> true_mean_oracle(const gaussian_mixture_spec& s, std::size_t n_grid) {
    validate(s);
    if (s.domain.size() > 3) throw dimension_too_large("oracle supports dimension <= 3");
    const double inv_sqrt_2pi = 0.39894228040143268;
    std::vector<detail::separable_component> comps;
    for (const auto& c : s.components) {
        double coef = c.weight;
        for (double sd : c.stdev) coef *= inv_sqrt_2pi / sd;
        comps.push_back({coef, c.mean, c.stdev});
    }
    return detail::separable_mixture_mean(comps, s.domain, n_grid);
}

inline std::vector<double> true_mean_oracle(const needle_spec& s, std::size_t n_grid) {
    validate(s);
    std::vector<detail::separable_component> comps;
    comps.push_back({1.0 / (s.stdev1 * s.stdev1 * s.stdev1),
                     {s.mean1.begin(), s.mean1.end()},
                     {s.stdev1, s.stdev1, s.stdev1}});
    comps.push_back({1.0 / (s.stdev2 * s.stdev2 * s.stdev2),
                     {s.mean2.begin(), s.mean2.end()},
                     {s.stdev2, s.stdev2, s.stdev2}});
    return detail::separable_mixture_mean(comps, s.domain, n_grid);
}

inline std::vector<double> true_mean_oracle(const levy_spec& s, std::size_t n_grid) {
    validate(s);
    return detail::tensor_grid_mean(
        [&](std::span<const double> x) { return reference_density(s, x); }, s.domain, n_grid);
}

inline std::vector<double> true_mean_oracle(const rosenbrock_spec& s, std::size_t n_grid) {
    validate(s);
    return detail::tensor_grid_mean(
        [&](std::span<const double> x) { return reference_density(s, x); }, s.domain, n_grid);
}

inline std::vector<double> true_mean_oracle(const witchs_hat_spec& s, std::size_t n_grid) {
    validate(s);
    const witchs_hat_target t(s);
    return detail::tensor_grid_mean(
        [&](std::span<const double> x) { return t.eval_point(x); }, s.domain, n_grid);
}

// ---------------------------------------------------------------------------
// Named benchmark targets: six Gaussian mixtures over [-100, 100] (the
// g-family), with g5hat widening the domain to radius 1e100.

inline gaussian_mixture_spec g1() {
    return {{{1.00, {-5.0}, {1.0}}}, box(interval(-100.0, 100.0), 1)};
}

inline gaussian_mixture_spec g2() {
    return {{{0.25, {-5.0}, {1.0}}, {0.75, {50.0}, {0.25}}}, box(interval(-100.0, 100.0), 1)};
}

namespace detail {

inline gaussian_mixture_spec g5_scaled(double scale, const box& domain) {
    gaussian_mixture_spec s{{{0.15, {-15.0}, {1.0 * scale}},
                             {0.20, {-5.0}, {1.0 * scale}},
                             {0.05, {3.0}, {0.5 * scale}},
                             {0.10, {6.0}, {1.0 * scale}},
                             {0.50, {50.0}, {0.1 * scale}}},
                            domain};
    return s;
}

} // namespace detail

inline gaussian_mixture_spec g5() {
    return detail::g5_scaled(1.0, box(interval(-100.0, 100.0), 1));
}

/// g5 with all scales shrunk by 10.
inline gaussian_mixture_spec g5p() {
    return detail::g5_scaled(0.1, box(interval(-100.0, 100.0), 1));
}

/// g5 with all scales shrunk by 100.
inline gaussian_mixture_spec g5pp() {
    return detail::g5_scaled(0.01, box(interval(-100.0, 100.0), 1));
}

/// g5 over a domain of radius 1e100.
inline gaussian_mixture_spec g5hat() {
    return detail::g5_scaled(1.0, box(interval(-1e100, 1e100), 1));
}

} // namespace ivmc::targets

#endif
