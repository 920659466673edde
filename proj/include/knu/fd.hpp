// Finite-difference derivative estimators.
//
// naive_fd is the textbook comparator whose weakness the AD path is measured
// against: forward difference with a fixed step for first derivatives,
// central second difference for second. adaptive_fd is the tenth-order
// reference: high-order central stencils with the step chosen by scanning a
// ladder and minimizing the estimated truncation-plus-roundoff error.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace knu {

using RealFn = std::function<double(double)>;

// Forward difference (k = 1) / central second difference (k = 2), no
// adaptivity. Typical h is 1e-6.
inline double naive_fd(const RealFn& f, double x0, double h, int k) {
    if (k == 1) return (f(x0 + h) - f(x0)) / h;
    if (k == 2) return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
    throw std::domain_error("naive_fd: derivative order must be 1 or 2");
}

namespace detail {

// tenth-order central stencils
inline constexpr std::array<double, 5> kD1Coef = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0,
                                                  -5.0 / 504.0, 1.0 / 1260.0};
inline constexpr double kD2Center = -5269.0 / 1800.0;
inline constexpr std::array<double, 5> kD2Coef = {5.0 / 3.0, -5.0 / 21.0, 5.0 / 126.0,
                                                  -5.0 / 1008.0, 1.0 / 3150.0};

inline double stencil10(const RealFn& f, double x0, double h, int k, bool& ok) {
    ok = true;
    double acc = 0.0;
    if (k == 1) {
        for (int j = 1; j <= 5; ++j) {
            const double fp = f(x0 + j * h), fm = f(x0 - j * h);
            if (!std::isfinite(fp) || !std::isfinite(fm)) { ok = false; return 0.0; }
            acc += kD1Coef[size_t(j - 1)] * (fp - fm);
        }
        return acc / h;
    }
    const double f0 = f(x0);
    if (!std::isfinite(f0)) { ok = false; return 0.0; }
    acc = kD2Center * f0;
    for (int j = 1; j <= 5; ++j) {
        const double fp = f(x0 + j * h), fm = f(x0 - j * h);
        if (!std::isfinite(fp) || !std::isfinite(fm)) { ok = false; return 0.0; }
        acc += kD2Coef[size_t(j - 1)] * (fp + fm);
    }
    return acc / (h * h);
}

}  // namespace detail

// Tenth-order central difference of derivative order k in {1, 2}, with the
// step picked adaptively: walk a geometric ladder of h and keep the value
// whose neighbor-disagreement is smallest.
inline double adaptive_fd(const RealFn& f, double x0, int k,
                          double h0 = -1.0, int levels = 18) {
    if (k != 1 && k != 2) throw std::domain_error("adaptive_fd: derivative order must be 1 or 2");
    if (h0 <= 0.0) h0 = 0.25 * (std::fabs(x0) + 1.0);
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = std::numeric_limits<double>::infinity();
    bool ok = false;
    double prev = 0.0;
    bool have_prev = false;
    double h = h0;
    for (int j = 0; j < levels; ++j, h *= 0.5) {
        const double cur = detail::stencil10(f, x0, h, k, ok);
        if (!ok) { have_prev = false; continue; }
        if (have_prev) {
            const double err = std::fabs(cur - prev);
            if (err < best_err) {
                best_err = err;
                best = cur;
            }
        }
        prev = cur;
        have_prev = true;
    }
    if (!std::isfinite(best)) throw std::runtime_error("adaptive_fd: no finite samples");
    return best;
}

}  // namespace knu
