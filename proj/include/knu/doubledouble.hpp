// Double-double arithmetic: an unevaluated sum of two doubles giving ~31-32
// significant digits. The small-argument Bessel series trade ~e^{2x} worth of
// cancellation for simplicity; running them in this type keeps the rounded
// double result correct where plain double arithmetic would lose the tail.
//
// Classic error-free transforms (Dekker/Knuth), fma-based products, and
// Taylor/Newton elementary functions. Only what the kernels need is here.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "knu/dual.hpp"

namespace knu {

namespace ddc {
#include "knu/detail/dd_constants.inc"
}

struct DoubleDouble {
    double hi{};
    double lo{};

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}
};

using DD = DoubleDouble;

namespace detail {
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double v = s - a;
    e = (a - (s - v)) + (b - v);
}
inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}
}  // namespace detail

inline double to_double(const DD& a) noexcept { return a.hi + a.lo; }

inline DD operator+(const DD& a, const DD& b) {
    double s1, s2, t1, t2;
    detail::two_sum(a.hi, b.hi, s1, s2);
    detail::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    detail::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    detail::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}
inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }

inline DD operator*(const DD& a, const DD& b) {
    double p, e;
    detail::two_prod(a.hi, b.hi, p, e);
    e = std::fma(a.hi, b.lo, std::fma(a.lo, b.hi, e));
    detail::quick_two_sum(p, e, p, e);
    return {p, e};
}

inline DD operator/(const DD& a, const DD& b) {
    const double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    const double q3 = r.hi / b.hi;
    double s, e;
    detail::quick_two_sum(q1, q2, s, e);
    DD q{s, e};
    return q + DD(q3);
}

inline DD operator+(const DD& a, double b) { return a + DD(b); }
inline DD operator+(double a, const DD& b) { return DD(a) + b; }
inline DD operator-(const DD& a, double b) { return a - DD(b); }
inline DD operator-(double a, const DD& b) { return DD(a) - b; }
inline DD operator*(const DD& a, double b) { return a * DD(b); }
inline DD operator*(double a, const DD& b) { return DD(a) * b; }
inline DD operator/(const DD& a, double b) { return a / DD(b); }
inline DD operator/(double a, const DD& b) { return DD(a) / b; }

inline DD& operator+=(DD& a, const DD& b) { a = a + b; return a; }
inline DD& operator-=(DD& a, const DD& b) { a = a - b; return a; }
inline DD& operator*=(DD& a, const DD& b) { a = a * b; return a; }
inline DD& operator/=(DD& a, const DD& b) { a = a / b; return a; }

inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) { return !(a == b); }
inline bool operator<(const DD& a, const DD& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }

inline DD abs(const DD& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline DD fabs(const DD& a) { return abs(a); }
inline bool isfinite(const DD& a) { return std::isfinite(a.hi); }

inline DD ldexp(const DD& a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline DD pi_const(DD) { return {ddc::kPi_hi, ddc::kPi_lo}; }

inline DD sqrt(const DD& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
    const double y = std::sqrt(a.hi);
    const DD yd(y);
    // one Newton step: y + (a - y^2) / (2y)
    return yd + (a - yd * yd) / (2.0 * y);
}

inline DD exp(const DD& a) {
    if (a.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
    if (a.hi < -745.0) return DD(0.0);
    const double m = std::nearbyint(a.hi / ddc::kLn2_hi);
    const DD ln2{ddc::kLn2_hi, ddc::kLn2_lo};
    const DD r = a - ln2 * DD(m);  // |r| <= ~0.347
    DD term(1.0), sum(1.0);
    for (int k = 1; k <= 26; ++k) {
        term = term * r / double(k);
        sum = sum + term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    return ldexp(sum, int(m));
}

inline DD log(const DD& a) {
    const double y0 = std::log(a.hi);
    const DD y(y0);
    // Newton: y + a*exp(-y) - 1
    return y + a * exp(-y) - DD(1.0);
}

inline DD pow(const DD& a, const DD& b) { return exp(b * log(a)); }
inline DD pow(const DD& a, double b) { return exp(DD(b) * log(a)); }

inline DD sinh(const DD& a) {
    if (std::fabs(a.hi) < 0.5) {
        const DD x2 = a * a;
        DD term = a, sum = a;
        for (int k = 1; k <= 12; ++k) {
            term = term * x2 / double((2 * k) * (2 * k + 1));
            sum = sum + term;
        }
        return sum;
    }
    const DD u = exp(a);
    return (u - 1.0 / u) * DD(0.5);
}

inline DD cosh(const DD& a) {
    const DD u = exp(a);
    return (u + 1.0 / u) * DD(0.5);
}

namespace detail {
// sin/cos of pi*r for |r| <= 0.25 by Taylor in (pi r).
inline DD sinpi_kernel(const DD& r) {
    const DD x = DD{ddc::kPi_hi, ddc::kPi_lo} * r;
    const DD x2 = x * x;
    DD term = x, sum = x;
    for (int k = 1; k <= 14; ++k) {
        term = term * x2 / double(-(2 * k) * (2 * k + 1));
        sum = sum + term;
    }
    return sum;
}
inline DD cospi_kernel(const DD& r) {
    const DD x = DD{ddc::kPi_hi, ddc::kPi_lo} * r;
    const DD x2 = x * x;
    DD term(1.0), sum(1.0);
    for (int k = 1; k <= 14; ++k) {
        term = term * x2 / double(-(2 * k - 1) * (2 * k));
        sum = sum + term;
    }
    return sum;
}
// quadrant reduction: t = (k + 2r)/2 with k integral, |r| <= 0.25
inline int reduce_quadrant(const DD& t, DD& r) {
    const DD u = ldexp(t, 1);
    const double k = std::nearbyint(to_double(u));
    r = ldexp(u - DD(k), -1);
    int q = int(std::fmod(k, 4.0));
    if (q < 0) q += 4;
    return q;
}
}  // namespace detail

inline DD sinpi(const DD& t) {
    DD r;
    switch (detail::reduce_quadrant(t, r)) {
        case 0: return detail::sinpi_kernel(r);
        case 1: return detail::cospi_kernel(r);
        case 2: return -detail::sinpi_kernel(r);
        default: return -detail::cospi_kernel(r);
    }
}

inline DD cospi(const DD& t) {
    DD r;
    switch (detail::reduce_quadrant(t, r)) {
        case 0: return detail::cospi_kernel(r);
        case 1: return -detail::sinpi_kernel(r);
        case 2: return -detail::cospi_kernel(r);
        default: return detail::sinpi_kernel(r);
    }
}

// 1/Gamma(1+z) for |z| <= 0.5 by its entire Taylor series; the even/odd
// coefficient split is also what temme_gamma_pair builds on.
inline DD recip_gamma1p(const DD& z) {
    DD sum(ddc::kRecipGammaCoeff[ddc::kRecipGammaTerms - 1][0],
           ddc::kRecipGammaCoeff[ddc::kRecipGammaTerms - 1][1]);
    for (int k = ddc::kRecipGammaTerms - 2; k >= 0; --k)
        sum = sum * z + DD{ddc::kRecipGammaCoeff[k][0], ddc::kRecipGammaCoeff[k][1]};
    return sum;
}

inline double recip_gamma1p(double z) {
    // double only needs the terms that matter at 1e-17 for |z| <= 0.5
    double sum = ddc::kRecipGammaCoeff[27][0];
    for (int k = 26; k >= 0; --k) sum = sum * z + ddc::kRecipGammaCoeff[k][0];
    return sum;
}

}  // namespace knu
