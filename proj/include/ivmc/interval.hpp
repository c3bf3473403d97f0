#ifndef IVMC_INTERVAL_HPP
#define IVMC_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "ivmc/errors.hpp"

namespace ivmc {

namespace detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double dbl_max = std::numeric_limits<double>::max();

inline double next_down(double x) { return std::nextafter(x, -inf); }
inline double next_up(double x) { return std::nextafter(x, inf); }

// Tightest double brackets of pi and friends: *_dn < true value < *_up.
inline constexpr double pi_dn = 0x1.921fb54442d18p+1;
inline constexpr double pi_up = 0x1.921fb54442d19p+1;
inline constexpr double two_pi_dn = 0x1.921fb54442d18p+2;
inline constexpr double two_pi_up = 0x1.921fb54442d19p+2;
inline constexpr double half_pi_dn = 0x1.921fb54442d18p+0;
inline constexpr double half_pi_up = 0x1.921fb54442d19p+0;

// Magnitude below which the FMA error probes for mul/div may not be exact
// (the error term falls into the subnormal range); such results are treated
// as inexact and stepped outward.
inline constexpr double eft_guard = 1e-280;

#ifdef IVMC_NO_DIRECTED_ROUNDING

inline double round_lo(double computed, bool) { return computed; }
inline double round_hi(double computed, bool) { return computed; }

#else

// `below` is true when the true result is known to lie at or below the
// computed value, so a lower endpoint must step down to stay conservative.
inline double round_lo(double computed, bool below) {
    return below ? next_down(computed) : computed;
}
inline double round_hi(double computed, bool above) {
    return above ? next_up(computed) : computed;
}

#endif

// Exact rounding error of s = fl(a + b) (Knuth two-sum), valid when s is
// finite. true sum = s + err.
inline double two_sum_err(double a, double b, double s) {
    const double bv = s - a;
    const double av = s - bv;
    return (a - av) + (b - bv);
}

inline double add_lo(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s > 0 ? dbl_max : s;
    return round_lo(s, two_sum_err(a, b, s) < 0);
}

inline double add_hi(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s < 0 ? -dbl_max : s;
    return round_hi(s, two_sum_err(a, b, s) > 0);
}

inline double sub_lo(double a, double b) { return add_lo(a, -b); }
inline double sub_hi(double a, double b) { return add_hi(a, -b); }

// Endpoint product with the 0 * inf = 0 convention used for enclosure
// endpoints (the unbounded direction is always covered by another
// candidate pair).
inline double mul_lo(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p > 0 ? dbl_max : p;
    if (p == 0.0) {
        // underflowed to zero but the true product is nonzero
        return (std::signbit(a) == std::signbit(b)) ? 0.0 : next_down(0.0);
    }
    if (std::fabs(p) < eft_guard) return next_down(p);
    return round_lo(p, std::fma(a, b, -p) < 0);
}

inline double mul_hi(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) return p < 0 ? -dbl_max : p;
    if (p == 0.0) {
        return (std::signbit(a) == std::signbit(b)) ? next_up(0.0) : 0.0;
    }
    if (std::fabs(p) < eft_guard) return next_up(p);
    return round_hi(p, std::fma(a, b, -p) > 0);
}

// Endpoint quotient; caller guarantees b != 0. a = q*b + r with r = -fma,
// so sign(true - q) = sign(r) * sign(b).
inline double div_lo(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    // a rounded-to-zero quotient keeps the true sign in its sign bit
    if (q == 0.0) return std::signbit(q) ? next_down(0.0) : 0.0;
    if (std::isinf(b)) return next_down(q);
    if (!std::isfinite(q)) return q > 0 ? dbl_max : q;
    if (std::fabs(q) < eft_guard || std::fabs(a) < eft_guard) return next_down(q);
    const double e = std::fma(q, b, -a); // = -r
    const bool true_below = (e > 0) == (b > 0) && e != 0;
    return round_lo(q, true_below);
}

inline double div_hi(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (q == 0.0) return std::signbit(q) ? 0.0 : next_up(0.0);
    if (std::isinf(b)) return next_up(q);
    if (!std::isfinite(q)) return q < 0 ? -dbl_max : q;
    if (std::fabs(q) < eft_guard || std::fabs(a) < eft_guard) return next_up(q);
    const double e = std::fma(q, b, -a);
    const bool true_above = (e > 0) == (b < 0) && e != 0;
    return round_hi(q, true_above);
}

// Library calls (exp, sin, ...) are not correctly rounded; glibc documents
// errors of up to 2 ulp for the functions used here. Step 4 ulps so that a
// rounded point evaluation anywhere inside the operand interval can never
// land outside the enclosure either.
inline double lib_lo(double v) {
#ifdef IVMC_NO_DIRECTED_ROUNDING
    return v;
#else
    return next_down(next_down(next_down(next_down(v))));
#endif
}

inline double lib_hi(double v) {
#ifdef IVMC_NO_DIRECTED_ROUNDING
    return v;
#else
    return next_up(next_up(next_up(next_up(v))));
#endif
}

inline double sqrt_lo(double x) {
    const double s = std::sqrt(x);
    if (!std::isfinite(s)) return s > 0 ? dbl_max : s;
    if (s == 0.0 || std::fabs(x) < eft_guard) return s == 0.0 ? 0.0 : next_down(s);
    return round_lo(s, std::fma(s, s, -x) > 0);
}

inline double sqrt_hi(double x) {
    const double s = std::sqrt(x);
    if (!std::isfinite(s)) return s;
    if (s == 0.0) return x == 0.0 ? 0.0 : next_up(0.0);
    if (std::fabs(x) < eft_guard) return next_up(s);
    return round_hi(s, std::fma(s, s, -x) < 0);
}

// x >= 0, n >= 1: directed integer power by repeated squaring; every
// intermediate is nonnegative so directed multiplication stays monotone.
inline double powi_pos(double x, unsigned long long n, bool up) {
    double base = x;
    double acc = 1.0;
    while (n > 0) {
        if (n & 1ULL) acc = up ? mul_hi(acc, base) : mul_lo(acc, base);
        n >>= 1;
        if (n > 0) base = up ? mul_hi(base, base) : mul_lo(base, base);
    }
    return acc;
}

// Signed endpoint power: for x < 0 and odd n, x^n = -(|x|^n).
inline double powi_lo(double x, unsigned long long n) {
    if (x >= 0.0) return powi_pos(x, n, false);
    if (n & 1ULL) return -powi_pos(-x, n, true);
    return powi_pos(-x, n, false);
}

inline double powi_hi(double x, unsigned long long n) {
    if (x >= 0.0) return powi_pos(x, n, true);
    if (n & 1ULL) return -powi_pos(-x, n, false);
    return powi_pos(-x, n, true);
}

} // namespace detail

/// Identifiers of the supported standard functions (piecewise monotone
/// with known interval extensions).
enum class std_fn : std::uint8_t {
    exp,
    log,
    sqrt,
    abs,
    sin,
    cos,
    tan,
    sinh,
    cosh,
    tanh,
    asin,
    acos,
    atan,
};

inline const char* name_of(std_fn f) {
    switch (f) {
        case std_fn::exp: return "exp";
        case std_fn::log: return "log";
        case std_fn::sqrt: return "sqrt";
        case std_fn::abs: return "abs";
        case std_fn::sin: return "sin";
        case std_fn::cos: return "cos";
        case std_fn::tan: return "tan";
        case std_fn::sinh: return "sinh";
        case std_fn::cosh: return "cosh";
        case std_fn::tanh: return "tanh";
        case std_fn::asin: return "asin";
        case std_fn::acos: return "acos";
        case std_fn::atan: return "atan";
    }
    return "?";
}

/// Closed real interval [lo, hi] with machine endpoints. Every operation
/// returns an interval that contains the exact real-arithmetic result for
/// all inputs drawn from the operands (endpoints are rounded outward unless
/// the build disables directed rounding). Endpoints may be infinite only as
/// saturated overflow; NaN endpoints and lo > hi are not representable.
///
/// Values are immutable after construction; all operations are pure.
class interval {
  public:
    interval() : lo_(0.0), hi_(0.0) {}

    explicit interval(double v) : interval(v, v) {}

    interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw invalid_interval("invalid interval endpoints [" + std::to_string(lo) +
                                   ", " + std::to_string(hi) + "]");
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const interval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

    friend bool operator==(const interval& a, const interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

  private:
    struct unchecked_tag {};
    interval(double lo, double hi, unchecked_tag) : lo_(lo), hi_(hi) {}

    // Assembles an op result: saturates endpoints that overflowed in the
    // useless direction so that lo <= hi still holds.
    static interval make(double lo, double hi) {
        if (lo == detail::inf) lo = detail::dbl_max;
        if (hi == -detail::inf) hi = -detail::dbl_max;
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw invalid_interval("operation produced invalid endpoints");
        return interval(lo, hi, unchecked_tag{});
    }

    double lo_;
    double hi_;

    friend interval add(const interval&, const interval&);
    friend interval sub(const interval&, const interval&);
    friend interval mul(const interval&, const interval&);
    friend interval div(const interval&, const interval&);
    friend interval pow_int(const interval&, long long);
    friend interval apply(std_fn, const interval&);
    friend interval hull(const interval&, const interval&);
    friend interval intersect(const interval&, const interval&);
};

inline interval add(const interval& a, const interval& b) {
    return interval::make(detail::add_lo(a.lo(), b.lo()), detail::add_hi(a.hi(), b.hi()));
}

inline interval sub(const interval& a, const interval& b) {
    return interval::make(detail::sub_lo(a.lo(), b.hi()), detail::sub_hi(a.hi(), b.lo()));
}

inline interval neg(const interval& a) { return interval(-a.hi(), -a.lo()); }

inline interval mul(const interval& a, const interval& b) {
    using namespace detail;
    const double lo = std::fmin(std::fmin(mul_lo(a.lo(), b.lo()), mul_lo(a.lo(), b.hi())),
                                std::fmin(mul_lo(a.hi(), b.lo()), mul_lo(a.hi(), b.hi())));
    const double hi = std::fmax(std::fmax(mul_hi(a.lo(), b.lo()), mul_hi(a.lo(), b.hi())),
                                std::fmax(mul_hi(a.hi(), b.lo()), mul_hi(a.hi(), b.hi())));
    return interval::make(lo, hi);
}

inline interval div(const interval& a, const interval& b) {
    using namespace detail;
    if (b.contains(0.0))
        throw division_by_zero_interval("division by an interval containing zero");
    const double lo = std::fmin(std::fmin(div_lo(a.lo(), b.lo()), div_lo(a.lo(), b.hi())),
                                std::fmin(div_lo(a.hi(), b.lo()), div_lo(a.hi(), b.hi())));
    const double hi = std::fmax(std::fmax(div_hi(a.lo(), b.lo()), div_hi(a.lo(), b.hi())),
                                std::fmax(div_hi(a.hi(), b.lo()), div_hi(a.hi(), b.hi())));
    return interval::make(lo, hi);
}

inline interval operator+(const interval& a, const interval& b) { return add(a, b); }
inline interval operator-(const interval& a, const interval& b) { return sub(a, b); }
inline interval operator-(const interval& a) { return neg(a); }
inline interval operator*(const interval& a, const interval& b) { return mul(a, b); }
inline interval operator/(const interval& a, const interval& b) { return div(a, b); }

/// hi - lo, rounded up.
inline double diameter(const interval& a) {
    if (a.lo() == a.hi()) return 0.0;
    return detail::add_hi(a.hi(), -a.lo());
}

inline double radius(const interval& a) { return diameter(a) * 0.5; }

/// Minimum absolute value over the interval (0 whenever 0 is inside).
inline double mignitude(const interval& a) {
    if (a.contains(0.0)) return 0.0;
    return std::min(std::fabs(a.lo()), std::fabs(a.hi()));
}

/// Maximum absolute value over the interval.
inline double magnitude(const interval& a) {
    return std::max(std::fabs(a.lo()), std::fabs(a.hi()));
}

/// A machine number inside [lo, hi], halfway up to rounding. Refinement
/// never bisects unbounded boxes, so infinite endpoints are an error here.
inline double midpoint(const interval& a) {
    if (!a.is_finite())
        throw unbounded_enclosure("midpoint of an interval with an infinite endpoint");
    if (a.lo() == a.hi()) return a.lo();
    double m = 0.5 * (a.lo() + a.hi());
    if (!std::isfinite(m)) m = 0.5 * a.lo() + 0.5 * a.hi();
    return std::clamp(m, a.lo(), a.hi());
}

inline interval hull(const interval& a, const interval& b) {
    return interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

/// max(|a.lo - b.lo|, |a.hi - b.hi|): the Hausdorff distance between two
/// closed intervals.
inline double hausdorff(const interval& a, const interval& b) {
    return std::max(std::fabs(a.lo() - b.lo()), std::fabs(a.hi() - b.hi()));
}

inline interval pow_int(const interval& a, long long n) {
    using namespace detail;
    if (n == 0) return interval(1.0, 1.0);
    if (n < 0) {
        if (a.contains(0.0))
            throw division_by_zero_interval("negative power of an interval containing zero");
        const interval p = pow_int(a, -n);
        return div(interval(1.0, 1.0), p);
    }
    const auto un = static_cast<unsigned long long>(n);
    if ((un & 1ULL) != 0)
        return interval::make(powi_lo(a.lo(), un), powi_hi(a.hi(), un));
    return interval::make(powi_pos(mignitude(a), un, false),
                          powi_pos(magnitude(a), un, true));
}

namespace detail {

// True when some integer k could satisfy lo <= k <= hi given the outward
// slack already present in lo/hi; non-finite bounds count as "could".
inline bool may_contain_integer(const interval& k) {
    if (!k.is_finite()) return true;
    return std::ceil(k.lo()) <= std::floor(k.hi());
}

// Does X possibly contain a point offset + k*step (k integer)? step is an
// interval enclosure of the true step so the test only ever widens.
inline bool hits_lattice(const interval& x, const interval& offset, const interval& step) {
    return may_contain_integer(div(sub(x, offset), step));
}

inline interval sin_range(const interval& x) {
    const interval two_pi(two_pi_dn, two_pi_up);
    const interval half_pi(half_pi_dn, half_pi_up);
    if (diameter(x) >= two_pi_dn) return interval(-1.0, 1.0);
    const bool has_max = hits_lattice(x, half_pi, two_pi);
    const bool has_min = hits_lattice(x, neg(half_pi), two_pi);
    const double sa = std::sin(x.lo());
    const double sb = std::sin(x.hi());
    double lo = has_min ? -1.0 : std::max(-1.0, std::min(lib_lo(sa), lib_lo(sb)));
    double hi = has_max ? 1.0 : std::min(1.0, std::max(lib_hi(sa), lib_hi(sb)));
    return interval(lo, hi);
}

inline interval cos_range(const interval& x) {
    const interval two_pi(two_pi_dn, two_pi_up);
    const interval pi(pi_dn, pi_up);
    if (diameter(x) >= two_pi_dn) return interval(-1.0, 1.0);
    const bool has_max = hits_lattice(x, interval(0.0), two_pi);
    const bool has_min = hits_lattice(x, pi, two_pi);
    const double ca = std::cos(x.lo());
    const double cb = std::cos(x.hi());
    double lo = has_min ? -1.0 : std::max(-1.0, std::min(lib_lo(ca), lib_lo(cb)));
    double hi = has_max ? 1.0 : std::min(1.0, std::max(lib_hi(ca), lib_hi(cb)));
    return interval(lo, hi);
}

inline std::string endpoints_text(const interval& a) {
    return "[" + std::to_string(a.lo()) + ", " + std::to_string(a.hi()) + "]";
}

inline interval tan_range(const interval& x) {
    const interval pi(pi_dn, pi_up);
    const interval half_pi(half_pi_dn, half_pi_up);
    if (diameter(x) >= pi_dn || hits_lattice(x, half_pi, pi))
        throw interval_domain_error("tan over an interval containing a pole: " +
                                    endpoints_text(x));
    return interval(lib_lo(std::tan(x.lo())), lib_hi(std::tan(x.hi())));
}

} // namespace detail

/// Interval extension of a standard function: the exact range of f over the
/// interval, widened outward for floating-point error. Throws
/// interval_domain_error when the interval leaves the function's real domain.
inline interval apply(std_fn f, const interval& a) {
    using namespace detail;
    switch (f) {
        case std_fn::exp:
            return interval::make(std::max(0.0, lib_lo(std::exp(a.lo()))),
                                  std::max(lib_hi(std::exp(a.hi())), next_up(0.0)));
        case std_fn::log:
            if (a.lo() <= 0.0)
                throw interval_domain_error("log of an interval reaching <= 0: " +
                                            detail::endpoints_text(a));
            return interval::make(lib_lo(std::log(a.lo())), lib_hi(std::log(a.hi())));
        case std_fn::sqrt:
            if (a.lo() < 0.0)
                throw interval_domain_error("sqrt of an interval reaching below 0: " +
                                            detail::endpoints_text(a));
            return interval::make(sqrt_lo(a.lo()), sqrt_hi(a.hi()));
        case std_fn::abs:
            return interval(mignitude(a), magnitude(a));
        case std_fn::sin:
            return sin_range(a);
        case std_fn::cos:
            return cos_range(a);
        case std_fn::tan:
            return tan_range(a);
        case std_fn::sinh:
            return interval::make(lib_lo(std::sinh(a.lo())), lib_hi(std::sinh(a.hi())));
        case std_fn::cosh: {
            const double hi = lib_hi(std::cosh(magnitude(a)));
            const double lo =
                a.contains(0.0) ? 1.0 : std::max(1.0, lib_lo(std::cosh(mignitude(a))));
            return interval::make(lo, hi);
        }
        case std_fn::tanh:
            return interval::make(std::max(-1.0, lib_lo(std::tanh(a.lo()))),
                                  std::min(1.0, lib_hi(std::tanh(a.hi()))));
        case std_fn::asin:
            if (a.lo() < -1.0 || a.hi() > 1.0)
                throw interval_domain_error("asin of an interval outside [-1, 1]: " +
                                            detail::endpoints_text(a));
            return interval::make(std::max(-half_pi_up, lib_lo(std::asin(a.lo()))),
                                  std::min(half_pi_up, lib_hi(std::asin(a.hi()))));
        case std_fn::acos:
            if (a.lo() < -1.0 || a.hi() > 1.0)
                throw interval_domain_error("acos of an interval outside [-1, 1]: " +
                                            detail::endpoints_text(a));
            return interval::make(std::max(0.0, lib_lo(std::acos(a.hi()))),
                                  std::min(pi_up, lib_hi(std::acos(a.lo()))));
        case std_fn::atan:
            return interval::make(std::max(-half_pi_up, lib_lo(std::atan(a.lo()))),
                                  std::min(half_pi_up, lib_hi(std::atan(a.hi()))));
    }
    throw error("unreachable standard function id");
}

} // namespace ivmc

#endif
