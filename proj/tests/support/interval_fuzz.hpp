#ifndef IVMC_TESTS_INTERVAL_FUZZ_HPP
#define IVMC_TESTS_INTERVAL_FUZZ_HPP

// Randomized containment / isotony / thin-consistency checks for the
// interval kernel. The oracle is extended precision: for x in a and y in b
// the (long double) value of x op y must land inside op(a, b), and so must
// the double-rounded value that point evaluation would produce.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "ivmc/interval.hpp"
#include "ivmc/rng.hpp"

namespace test_fuzz {

struct fuzz_result {
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++violations;
        if (first_failure.empty()) first_failure = what;
    }
};

inline double rand_signed_mag(ivmc::rng& r) {
    const double u = r.uniform01();
    double e;
    if (u < 0.05) {
        e = -320.0 + r.uniform01() * 60.0; // deep underflow territory
    } else if (u < 0.10) {
        e = 250.0 + r.uniform01() * 57.0; // near overflow
    } else if (u < 0.13) {
        return 0.0;
    } else {
        e = r.uniform01() * 24.0 - 12.0;
    }
    const double s = r.uniform01() < 0.5 ? -1.0 : 1.0;
    return s * std::pow(10.0, e);
}

inline ivmc::interval rand_interval(ivmc::rng& r) {
    const double u = r.uniform01();
    if (u < 0.15) {
        const double v = rand_signed_mag(r);
        return ivmc::interval(v);
    }
    if (u < 0.30) {
        const double a = std::fabs(rand_signed_mag(r));
        const double b = std::fabs(rand_signed_mag(r));
        return ivmc::interval(-a, b);
    }
    if (u < 0.45) {
        const double v = rand_signed_mag(r);
        const double w = std::fabs(v) * (r.uniform01() * 1e-12);
        return ivmc::interval(v, v + w);
    }
    double a = rand_signed_mag(r);
    double b = rand_signed_mag(r);
    if (a > b) std::swap(a, b);
    return ivmc::interval(a, b);
}

inline double rand_inside(ivmc::rng& r, const ivmc::interval& iv) {
    const double x = iv.lo() + r.uniform01() * (iv.hi() - iv.lo());
    return std::min(std::max(x, iv.lo()), iv.hi());
}

inline bool contains_ld(const ivmc::interval& iv, long double v) {
    return static_cast<long double>(iv.lo()) <= v && v <= static_cast<long double>(iv.hi());
}

inline std::string describe(const char* op, const ivmc::interval& a, const ivmc::interval& b,
                            double x, double y, const ivmc::interval& res) {
    std::ostringstream os;
    os.precision(17);
    os << op << " a=[" << a.lo() << "," << a.hi() << "] b=[" << b.lo() << "," << b.hi()
       << "] x=" << x << " y=" << y << " res=[" << res.lo() << "," << res.hi() << "]";
    return os.str();
}

// Binary arithmetic containment: draws (op, a, b, x in a, y in b) and checks
// both the extended-precision and the double-rounded value of x op y.
inline fuzz_result run_containment_fuzz(std::uint64_t n, std::uint64_t seed) {
    using namespace ivmc;
    rng r(seed);
    fuzz_result out;
    while (out.cases < n) {
        const interval a = rand_interval(r);
        const interval b = rand_interval(r);
        const double x = rand_inside(r, a);
        const double y = rand_inside(r, b);
        const std::size_t op = static_cast<std::size_t>(r.uniform01() * 4.0) % 4;
        interval res;
        long double exact = 0.0L;
        double rounded = 0.0;
        const char* name = "";
        switch (op) {
            case 0:
                res = add(a, b);
                exact = static_cast<long double>(x) + y;
                rounded = x + y;
                name = "add";
                break;
            case 1:
                res = sub(a, b);
                exact = static_cast<long double>(x) - y;
                rounded = x - y;
                name = "sub";
                break;
            case 2:
                res = mul(a, b);
                exact = static_cast<long double>(x) * y;
                rounded = x * y;
                name = "mul";
                break;
            case 3:
                if (b.contains(0.0)) continue;
                res = div(a, b);
                exact = static_cast<long double>(x) / y;
                rounded = x / y;
                name = "div";
                break;
        }
        ++out.cases;
        if (!contains_ld(res, exact) ||
            (std::isfinite(rounded) && !res.contains(rounded)))
            out.fail(describe(name, a, b, x, y, res));
    }
    return out;
}

// Standard function containment on domain-respecting intervals.
inline fuzz_result run_std_fn_fuzz(std::uint64_t n, std::uint64_t seed) {
    using namespace ivmc;
    rng r(seed);
    fuzz_result out;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::size_t which = static_cast<std::size_t>(r.uniform01() * 13.0) % 13;
        const auto f = static_cast<std_fn>(which);
        double lo = r.uniform01() * 60.0 - 30.0;
        double hi = lo + r.uniform01() * 10.0;
        switch (f) {
            case std_fn::log:
                lo = std::fabs(lo) + 1e-8;
                hi = lo + std::fabs(hi);
                break;
            case std_fn::sqrt:
                lo = std::fabs(lo);
                hi = lo + std::fabs(hi);
                break;
            case std_fn::asin:
            case std_fn::acos:
                lo = r.uniform01() * 2.0 - 1.0;
                hi = lo + r.uniform01() * (1.0 - lo);
                break;
            case std_fn::tan: {
                // stay inside one pole-free branch
                const double c = 3.141592653589793 * std::floor(r.uniform01() * 7.0 - 3.0);
                lo = c - 1.45;
                hi = lo + r.uniform01() * 2.8;
                break;
            }
            default: break;
        }
        const interval a(lo, hi);
        interval res;
        try {
            res = apply(f, a);
        } catch (const interval_domain_error&) {
            continue; // borderline domain draw; not a containment case
        }
        const double x = rand_inside(r, a);
        long double exact = 0.0L;
        double rounded = 0.0;
        switch (f) {
            case std_fn::exp: exact = expl(x); rounded = std::exp(x); break;
            case std_fn::log: exact = logl(x); rounded = std::log(x); break;
            case std_fn::sqrt: exact = sqrtl(x); rounded = std::sqrt(x); break;
            case std_fn::abs: exact = fabsl(x); rounded = std::fabs(x); break;
            case std_fn::sin: exact = sinl(x); rounded = std::sin(x); break;
            case std_fn::cos: exact = cosl(x); rounded = std::cos(x); break;
            case std_fn::tan: exact = tanl(x); rounded = std::tan(x); break;
            case std_fn::sinh: exact = sinhl(x); rounded = std::sinh(x); break;
            case std_fn::cosh: exact = coshl(x); rounded = std::cosh(x); break;
            case std_fn::tanh: exact = tanhl(x); rounded = std::tanh(x); break;
            case std_fn::asin: exact = asinl(x); rounded = std::asin(x); break;
            case std_fn::acos: exact = acosl(x); rounded = std::acos(x); break;
            case std_fn::atan: exact = atanl(x); rounded = std::atan(x); break;
        }
        ++out.cases;
        if (!contains_ld(res, exact) ||
            (std::isfinite(rounded) && !res.contains(rounded)))
            out.fail(describe(name_of(f), a, a, x, x, res));
    }
    return out;
}

// Inclusion isotony: for a inside a' and b inside b', op(a,b) must be
// inside op(a',b').
inline fuzz_result run_isotony_fuzz(std::uint64_t n, std::uint64_t seed) {
    using namespace ivmc;
    rng r(seed);
    fuzz_result out;
    while (out.cases < n) {
        const interval a_outer = rand_interval(r);
        const interval b_outer = rand_interval(r);
        double a1 = rand_inside(r, a_outer), a2 = rand_inside(r, a_outer);
        double b1 = rand_inside(r, b_outer), b2 = rand_inside(r, b_outer);
        if (a1 > a2) std::swap(a1, a2);
        if (b1 > b2) std::swap(b1, b2);
        const interval a(a1, a2), b(b1, b2);
        const std::size_t op = static_cast<std::size_t>(r.uniform01() * 4.0) % 4;
        interval inner, outer;
        const char* name = "";
        switch (op) {
            case 0: inner = add(a, b); outer = add(a_outer, b_outer); name = "add"; break;
            case 1: inner = sub(a, b); outer = sub(a_outer, b_outer); name = "sub"; break;
            case 2: inner = mul(a, b); outer = mul(a_outer, b_outer); name = "mul"; break;
            case 3:
                if (b_outer.contains(0.0)) continue;
                inner = div(a, b);
                outer = div(a_outer, b_outer);
                name = "div";
                break;
        }
        ++out.cases;
        if (!outer.contains(inner))
            out.fail(describe(name, a_outer, b_outer, a.lo(), b.lo(), outer));
    }
    return out;
}

// Thin-interval consistency: op on [x,x],[y,y] contains the extended
// precision value of x op y.
inline fuzz_result run_thin_fuzz(std::uint64_t n, std::uint64_t seed) {
    using namespace ivmc;
    rng r(seed);
    fuzz_result out;
    while (out.cases < n) {
        const double x = rand_signed_mag(r);
        const double y = rand_signed_mag(r);
        const interval a(x), b(y);
        const std::size_t op = static_cast<std::size_t>(r.uniform01() * 4.0) % 4;
        interval res;
        long double exact = 0.0L;
        const char* name = "";
        switch (op) {
            case 0: res = add(a, b); exact = static_cast<long double>(x) + y; name = "add"; break;
            case 1: res = sub(a, b); exact = static_cast<long double>(x) - y; name = "sub"; break;
            case 2: res = mul(a, b); exact = static_cast<long double>(x) * y; name = "mul"; break;
            case 3:
                if (y == 0.0) continue;
                res = div(a, b);
                exact = static_cast<long double>(x) / y;
                name = "div";
                break;
        }
        ++out.cases;
        if (!contains_ld(res, exact)) out.fail(describe(name, a, b, x, y, res));
    }
    return out;
}

} // namespace test_fuzz

#endif
