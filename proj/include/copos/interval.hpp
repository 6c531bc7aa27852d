#ifndef COPOS_INTERVAL_HPP
#define COPOS_INTERVAL_HPP

#include <cmath>
#include <limits>

namespace copos {

// Closed interval with outward rounding: every arithmetic result is widened
// by one ulp per endpoint instead of toggling the FPU rounding mode. Slightly
// conservative, fully portable.
struct Interval {
    double lo = 0.0, hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool strictly_inside(const Interval& outer) const { return outer.lo < lo && hi < outer.hi; }
};

namespace detail_iv {
inline double down(double v) {
    return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace detail_iv

inline Interval operator+(Interval a, Interval b) {
    return {detail_iv::down(a.lo + b.lo), detail_iv::up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) {
    return {detail_iv::down(a.lo - b.hi), detail_iv::up(a.hi - b.lo)};
}

inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
    double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
    return {detail_iv::down(lo), detail_iv::up(hi)};
}

inline Interval iscale(double k, Interval a) { return Interval(k) * a; }

inline Interval iexp(Interval a) {
    return {detail_iv::down(std::exp(a.lo)), detail_iv::up(std::exp(a.hi))};
}

inline Interval ihull(Interval a, Interval b) {
    return {std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi)};
}

inline bool iintersect(Interval a, Interval b, Interval* out) {
    double lo = std::fmax(a.lo, b.lo), hi = std::fmin(a.hi, b.hi);
    if (lo > hi) return false;
    *out = {lo, hi};
    return true;
}

}  // namespace copos

#endif
