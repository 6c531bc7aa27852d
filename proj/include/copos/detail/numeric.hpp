#ifndef COPOS_DETAIL_NUMERIC_HPP
#define COPOS_DETAIL_NUMERIC_HPP

#include <cmath>

namespace copos::detail {

// Neumaier compensated summation.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

inline double int_pow(double base, long long e) {
    if (e < 0) return 1.0 / int_pow(base, -e);
    double acc = 1.0, b = base;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k > 0) {
        if (k & 1ULL) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

}  // namespace copos::detail

#endif
