// Minimal interval arithmetic with outward rounding, used to bound the
// worst-case element-wise variation of the normalized detection matrix
// over a grid cell. Only the operations needed there are provided.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace qkd {

struct Interval {
    double lo;
    double hi;

    Interval() : lo(0), hi(0) {}
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}
};

namespace detail {
inline Interval outward(double lo, double hi) {
    // One ulp outward per operation; crude but sound for the magnitudes here.
    return {std::nextafter(lo, -std::numeric_limits<double>::infinity()),
            std::nextafter(hi, std::numeric_limits<double>::infinity())};
}
}  // namespace detail

inline Interval operator+(Interval a, Interval b) {
    return detail::outward(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(Interval a, Interval b) {
    return detail::outward(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator*(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return detail::outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline Interval operator*(double c, Interval a) { return Interval(c) * a; }

// Division restricted to strictly positive denominators.
inline Interval operator/(Interval a, Interval b) {
    double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return detail::outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline Interval isqrt(Interval a) {
    double lo = a.lo > 0 ? std::sqrt(a.lo) : 0.0;
    double hi = a.hi > 0 ? std::sqrt(a.hi) : 0.0;
    return detail::outward(lo, hi);
}

}  // namespace qkd
