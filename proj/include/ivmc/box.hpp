#ifndef IVMC_BOX_HPP
#define IVMC_BOX_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ivmc/errors.hpp"
#include "ivmc/interval.hpp"

namespace ivmc {

/// Axis-aligned box: an ordered vector of intervals, one per dimension.
/// Immutable after construction.
class box {
  public:
    explicit box(std::vector<interval> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw invalid_spec("box needs at least one dimension");
    }

    box(const interval& side, std::size_t n) : dims_(n, side) {
        if (n == 0) throw invalid_spec("box needs at least one dimension");
    }

    std::size_t size() const { return dims_.size(); }
    const interval& operator[](std::size_t k) const { return dims_[k]; }
    const std::vector<interval>& dims() const { return dims_; }
    auto begin() const { return dims_.begin(); }
    auto end() const { return dims_.end(); }

    bool contains(std::span<const double> x) const {
        if (x.size() != dims_.size()) return false;
        for (std::size_t k = 0; k < dims_.size(); ++k)
            if (!dims_[k].contains(x[k])) return false;
        return true;
    }

    friend bool operator==(const box& a, const box& b) { return a.dims_ == b.dims_; }

  private:
    std::vector<interval> dims_;
};

/// Product of the per-axis diameters. Raises unbounded_enclosure when an
/// endpoint is infinite or the product overflows.
inline double box_volume(const box& b) {
    double v = 1.0;
    for (const interval& d : b) {
        if (!d.is_finite())
            throw unbounded_enclosure("volume of a box with an infinite side");
        v *= diameter(d);
    }
    if (!std::isfinite(v)) throw unbounded_enclosure("box volume overflowed");
    return v;
}

/// Largest per-axis diameter and the first axis attaining it.
inline std::pair<double, std::size_t> box_max_diameter(const box& b) {
    double best = diameter(b[0]);
    std::size_t axis = 0;
    for (std::size_t k = 1; k < b.size(); ++k) {
        const double d = diameter(b[k]);
        if (d > best) {
            best = d;
            axis = k;
        }
    }
    return {best, axis};
}

/// Splits `b` at the midpoint of `axis`. The two halves tile `b`: their
/// union is `b` and their interiors are disjoint.
inline std::pair<box, box> bisect(const box& b, std::size_t axis) {
    const interval& side = b[axis];
    const double m = midpoint(side);
    std::vector<interval> lo_dims = b.dims();
    std::vector<interval> hi_dims = b.dims();
    lo_dims[axis] = interval(side.lo(), m);
    hi_dims[axis] = interval(m, side.hi());
    return {box(std::move(lo_dims)), box(std::move(hi_dims))};
}

namespace detail {

inline bool splittable(const interval& d) {
    if (!d.is_finite()) return false;
    const double m = midpoint(d);
    return m > d.lo() && m < d.hi();
}

} // namespace detail

/// Widest axis that can still be split into two strictly smaller
/// intervals; returns b.size() when the box is unrefinable.
inline std::size_t widest_bisectable_axis(const box& b) {
    double best = -1.0;
    std::size_t axis = b.size();
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!detail::splittable(b[k])) continue;
        const double d = diameter(b[k]);
        if (d > best) {
            best = d;
            axis = k;
        }
    }
    return axis;
}

/// True when at least one axis can still be split into two strictly
/// smaller intervals.
inline bool is_bisectable(const box& b) { return widest_bisectable_axis(b) < b.size(); }

inline std::vector<double> box_midpoint(const box& b) {
    std::vector<double> m;
    m.reserve(b.size());
    for (const interval& d : b) m.push_back(midpoint(d));
    return m;
}

} // namespace ivmc

#endif
