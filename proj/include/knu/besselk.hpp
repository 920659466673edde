// K_nu(x), x^nu K_nu(x), and their first two order-derivatives.
//
// Evaluation strategies, dispatched over the (nu, x) plane:
//   Series        regrouped power series, small x, order away from integers
//   TemmeIntRec   Temme's series near nu in [-1/2, 1/2] plus upward recursion,
//                 covering integer orders without the limit-branch problem
//   UAE           uniform large-order asymptotic expansion in U_k polynomials
//   LargeArg      plain large-argument expansion
//   HalfIntExact  terminating half-integer sum (value-only queries)
//   HalfIntImproved  the same sum plus the exponentially-improved remainder,
//                 which is what keeps order-derivatives alive at half-integers
//
// Every branch is templated on the scalar, so the same expressions produce
// values (double), first derivatives (Dual1), and second derivatives (Dual2).
// The small-x branches optionally run in double-double: their regrouped sums
// cancel like e^{2x}, and past x ~ 8 (or very near integer orders, where a
// sin(pi nu) denominator amplifies further) plain double can no longer hit
// the accuracy the rest of the library is held to.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "knu/branch.hpp"
#include "knu/doubledouble.hpp"
#include "knu/dual.hpp"
#include "knu/gamma.hpp"
#include "knu/uk_table.hpp"

namespace knu {

namespace detail {

inline DD widen(double x) { return DD(x); }
inline Dual1<DD> widen(const Dual1<double>& a) { return {DD(a.val), DD(a.d1)}; }
inline Dual2<DD> widen(const Dual2<double>& a) { return {DD(a.val), DD(a.d1), DD(a.d2)}; }
inline double narrow(const DD& x) { return to_double(x); }
inline Dual1<double> narrow(const Dual1<DD>& a) { return {to_double(a.val), to_double(a.d1)}; }
inline Dual2<double> narrow(const Dual2<DD>& a) {
    return {to_double(a.val), to_double(a.d1), to_double(a.d2)};
}

inline bool slot_small(double term, double sum, double tol) {
    return std::fabs(term) <= tol * std::fabs(sum) + 1e-305;
}
inline bool term_converged(double t, double s, double tol) { return slot_small(t, s, tol); }
inline bool term_converged(const DD& t, const DD& s, double tol) { return slot_small(t.hi, s.hi, tol); }
template <typename T>
bool term_converged(const Dual1<T>& t, const Dual1<T>& s, double tol) {
    return term_converged(t.val, s.val, tol) && term_converged(t.d1, s.d1, tol);
}
template <typename T>
bool term_converged(const Dual2<T>& t, const Dual2<T>& s, double tol) {
    return term_converged(t.val, s.val, tol) && term_converged(t.d1, s.d1, tol) &&
           term_converged(t.d2, s.d2, tol);
}

template <typename S>
constexpr bool is_dd_backed = std::is_same_v<underlying_real_t<S>, DD>;

template <typename S>
double series_tol(double t1_tol) {
    // the extended-precision pipeline converges to its own epsilon
    return is_dd_backed<S> ? t1_tol * 1e-17 : t1_tol;
}

// nu * pi / sin(nu * pi), with an even Taylor window so value and both
// derivative slots stay finite and correct through nu = 0.
template <typename S>
S xspi_guarded(const S& nu) {
    constexpr double window = scalar_traits<S>::guard_window;
    if (std::fabs(primal(nu)) < window) {
        const S y = nu * nu * (3.141592653589793 * 3.141592653589793);
        // x/sin(x) even coefficients
        S acc = S(1414477.0 / 653837184000.0);
        acc = acc * y + S(73.0 / 3421440.0);
        acc = acc * y + S(127.0 / 604800.0);
        acc = acc * y + S(31.0 / 15120.0);
        acc = acc * y + S(7.0 / 360.0);
        acc = acc * y + S(1.0 / 6.0);
        return acc * y + S(1.0);
    }
    using R = underlying_real_t<S>;
    return nu * pi_const(R{}) / sinpi(nu);
}

// sinh(mu)/mu; series below 1/2, explicit quotient above. e and einv are
// exp(mu) and its reciprocal, already computed by the caller.
template <typename S>
S sinhc_guarded(const S& mu, const S& e, const S& einv) {
    if (std::fabs(primal(mu)) < 0.5) {
        const S m2 = mu * mu;
        S term = S(1.0), sum = S(1.0);
        const double tol = scalar_traits<S>::series_tol_floor;
        for (int k = 1; k <= 14; ++k) {
            term = term * m2 * (1.0 / (double(2 * k) * double(2 * k + 1)));
            sum = sum + term;
            if (std::fabs(primal(term)) < tol) break;
        }
        return sum;
    }
    return (e - einv) * 0.5 / mu;
}

inline constexpr int kSeriesCap = 100;

// -------------------------------------------------------------- series (ii)
//
// K_nu(x) = sum_k (x/2)^{2k} / (2 k!) * [ G(nu) (x/2)^{-nu} Gq-(k)
//                                       + G(-nu) (x/2)^{nu} Gq+(k) ]
// with the gamma ratios Gq∓(k) = Gamma(1∓nu)/Gamma(1+k∓nu) updated
// algebraically and the prefactor products evaluated through the reflection
// identity Gamma(nu)Gamma(1-nu) = pi/sin(pi nu).

template <typename S>
S besselk_series(const S& nu, double x, double tol) {
    using R = underlying_real_t<S>;
    if (!(x > 0.0)) throw std::domain_error("besselk_series: x must be positive");
    using std::exp; using std::log;
    const R ln2 = is_dd_backed<S> ? R(DD{ddc::kLn2_hi, ddc::kLn2_lo}) : R(0.6931471805599453);
    const R lhalf = log(R(x)) - ln2;  // log(x/2)
    const S u = exp(nu * lhalf);      // (x/2)^nu
    const S pref = pi_const(R{}) / sinpi(nu);
    const S a = pref / u;
    const S b = -pref * u;
    S t1 = S(1.0), t2 = S(1.0);
    const R q = R(x) * R(x) * R(0.25);
    R w = R(0.5);  // (x^2/4)^k / (2 k!)
    S sum = S(0.0);
    for (int k = 0; k <= kSeriesCap; ++k) {
        const S term = (a * t1 + b * t2) * w;
        sum = sum + term;
        if (k >= 3 && term_converged(term, sum, tol)) return sum;
        const double kp1 = double(k) + 1.0;
        t1 = t1 / (S(kp1) - nu);
        t2 = t2 / (S(kp1) + nu);
        w = w * q / R(kp1);
    }
    throw std::runtime_error("besselk_series: no convergence within 100 terms");
}

// scaled variant: x^nu K_nu(x); the (x/2)^{-nu} x^nu product cancels to 2^nu
// analytically, which keeps x = 0+ finite for nu > 0.
template <typename S>
S besselk_series_scaled(const S& nu, double x, double tol) {
    using R = underlying_real_t<S>;
    if (!(x > 0.0)) throw std::domain_error("besselk_series_scaled: x must be positive");
    using std::exp; using std::log;
    const R ln2 = is_dd_backed<S> ? R(DD{ddc::kLn2_hi, ddc::kLn2_lo}) : R(0.6931471805599453);
    const R lx = log(R(x));
    const S pref = pi_const(R{}) / sinpi(nu);
    const S a = pref * exp(nu * ln2);                    // * 2^nu
    const S b = -pref * exp(nu * (lx + lx - ln2));       // * (x^2/2)^nu
    S t1 = S(1.0), t2 = S(1.0);
    const R q = R(x) * R(x) * R(0.25);
    R w = R(0.5);
    S sum = S(0.0);
    for (int k = 0; k <= kSeriesCap; ++k) {
        const S term = (a * t1 + b * t2) * w;
        sum = sum + term;
        if (k >= 3 && term_converged(term, sum, tol)) return sum;
        const double kp1 = double(k) + 1.0;
        t1 = t1 / (S(kp1) - nu);
        t2 = t2 / (S(kp1) + nu);
        w = w * q / R(kp1);
    }
    throw std::runtime_error("besselk_series_scaled: no convergence within 100 terms");
}

// ---------------------------------------------------------------- Temme (i)
//
// Decompose nu = n + fnu with fnu in [-1/2, 1/2]; run the f/p/q series for
// K_fnu and K_{fnu+1}, then ascend with K_{a+1} = K_{a-1} + (2a/x) K_a.
// All arithmetic stays in the tracked scalar, so order-derivatives at exact
// integers come out right instead of being severed by a limiting branch.

template <typename S>
struct TemmeSums {
    S k0;      // sum c_j f_j            = K_fnu            (or x^fnu K_fnu)
    S k1half;  // sum c_j (p_j - j f_j)  = (x/2) K_{fnu+1}  (or x^{fnu+1} K_{fnu+1} / 2)
};

template <typename S>
TemmeSums<S> temme_core(const S& fnu, double x, double tol, bool scaled) {
    using R = underlying_real_t<S>;
    using std::exp; using std::log;
    const R ln2 = is_dd_backed<S> ? R(DD{ddc::kLn2_hi, ddc::kLn2_lo}) : R(0.6931471805599453);
    const R lby = ln2 - log(R(x));  // log(2/x)
    const S mu = fnu * lby;
    const S e = exp(mu);          // (2/x)^fnu
    const S einv = S(1.0) / e;
    auto [g1, g2] = temme_gamma_pair(fnu);
    const S xs = xspi_guarded(fnu);
    const S shc = sinhc_guarded(mu, e, einv);
    constexpr int terms = scalar_traits<S>::recip_gamma_terms;
    const S gamp = S(1.0) / recip_gamma1p_series(fnu, terms);   // Gamma(1+fnu)
    const S gamm = S(1.0) / recip_gamma1p_series(-fnu, terms);  // Gamma(1-fnu)

    S f, p, qq;
    if (!scaled) {
        f = xs * (g1 * ((e + einv) * 0.5) + g2 * (lby * shc));
        p = S(0.5) * e * gamp;
        qq = S(0.5) * einv * gamm;
    } else {
        // multiplied through by x^fnu: x^fnu cosh(mu) = 2^fnu (1 + E^2)/2,
        // x^fnu sinh(mu)/mu = 2^fnu E sinhc(mu), with E = (x/2)^fnu = 1/e
        const S twonu = exp(fnu * ln2);
        const S e2 = einv * einv;
        f = xs * twonu * (g1 * (S(1.0) + e2) * 0.5 + g2 * (lby * (einv * shc)));
        p = S(0.5) * twonu * gamp;
        qq = S(0.5) * (twonu * e2) * gamm;
    }

    const S nusq = fnu * fnu;
    const R q4 = R(x) * R(x) * R(0.25);
    R c = R(1.0);
    S sum0 = f;
    S sum1 = p;
    for (int j = 1; j <= kSeriesCap; ++j) {
        const double jd = double(j);
        f = (jd * f + p + qq) / (S(jd * jd) - nusq);
        p = p / (S(jd) - fnu);
        qq = qq / (S(jd) + fnu);
        c = c * q4 / R(jd);
        const S term0 = c * f;
        const S term1 = c * (p - jd * f);
        sum0 = sum0 + term0;
        sum1 = sum1 + term1;
        if (j >= 4 && term_converged(term0, sum0, tol) && term_converged(term1, sum1, tol))
            return {sum0, sum1};
    }
    throw std::runtime_error("besselk_temme: series cap (100 terms) exceeded");
}

template <typename S>
S besselk_temme(const S& nu, double x, double tol) {
    const double nv = primal(nu);
    const double nd = std::round(nv);
    const long n = long(nd);
    const S fnu = nu - nd;
    const auto sums = temme_core(fnu, x, tol, /*scaled=*/false);
    if (n == 0) return sums.k0;
    S kcur = sums.k0;
    S knext = sums.k1half * (2.0 / x);
    for (long i = 1; i < n; ++i) {
        const S knn = kcur + (fnu + double(i)) * (2.0 / x) * knext;
        kcur = knext;
        knext = knn;
    }
    return knext;
}

template <typename S>
S besselk_temme_scaled(const S& nu, double x, double tol) {
    const double nv = primal(nu);
    const double nd = std::round(nv);
    const long n = long(nd);
    const S fnu = nu - nd;
    const auto sums = temme_core(fnu, x, tol, /*scaled=*/true);
    if (n == 0) return sums.k0;
    const double x2 = x * x;
    S gcur = sums.k0;             // x^fnu K_fnu
    S gnext = sums.k1half * 2.0;  // x^{fnu+1} K_{fnu+1}
    for (long i = 1; i < n; ++i) {
        const S gnn = x2 * gcur + (fnu + double(i)) * 2.0 * gnext;
        gcur = gnext;
        gnext = gnn;
    }
    return gnext;
}

}  // namespace detail

using detail::besselk_series;
using detail::besselk_series_scaled;
using detail::besselk_temme;
using detail::besselk_temme_scaled;

// ----------------------------------------------------------------- UAE (iii)
//
// K_nu(nu z) ~ sqrt(pi/(2 nu)) e^{-nu eta} (1+z^2)^{-1/4}
//              sum_k (-1)^k nu^{-k} U_k(p),  evaluated at z = x/nu.
// nu enters both the prefactor and z, and the dual arithmetic carries the
// chain rule through both paths.
template <typename S>
S besselk_uae(const S& nu, double x, int trunc, const UkTable& table = shared_uk_table()) {
    using std::exp; using std::log; using std::sqrt;
    if (trunc > table.max_order) throw std::out_of_range("besselk_uae: truncation beyond table");
    if (!(x > 0.0) || !(primal(nu) > 0.0))
        throw std::domain_error("besselk_uae: need x > 0 and nu > 0");
    const S z = x / nu;
    const S w = sqrt(S(1.0) + z * z);
    const S eta = w + log(z / (S(1.0) + w));
    const S invnu = S(1.0) / nu;
    const S pref = sqrt(1.5707963267948966 * invnu) * exp(-(nu * eta)) / sqrt(w);
    const S p2 = S(1.0) / (w * w);
    const S p1 = S(1.0) / w;
    S pk = S(1.0);       // p^k
    S scale = S(1.0);    // (-1)^k nu^{-k}
    S sum = S(0.0);
    for (int k = 0; k <= trunc; ++k) {
        const auto& qc = table.qpolys[size_t(k)];
        S qk = S(qc.back());
        for (size_t j = qc.size() - 1; j-- > 0;) qk = qk * p2 + S(qc[j]);
        sum = sum + scale * pk * qk;
        pk = pk * p1;
        scale = -scale * invnu;
    }
    return pref * sum;
}

// ------------------------------------------------------------ large x (iv)
//
// K_nu(x) ~ sqrt(pi/(2x)) e^{-x} sum_k a_k(nu) x^{-k},
// a_k(nu) = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (8^k k!).
template <typename S>
S besselk_large_arg(const S& nu, double x, int trunc) {
    if (!(x > 0.0)) throw std::domain_error("besselk_large_arg: x must be positive");
    const double pref = std::sqrt(1.5707963267948966 / x) * std::exp(-x);
    const S nusq4 = 4.0 * (nu * nu);
    S t = S(1.0), sum = S(1.0);
    for (int k = 1; k <= trunc; ++k) {
        const double odd = 2.0 * k - 1.0;
        t = t * (nusq4 - odd * odd) / (8.0 * k * x);
        sum = sum + t;
    }
    return pref * sum;
}

// ------------------------------------------------------- half-integers (v)
//
// At nu = n + 1/2 the large-argument sum terminates and is exact. Under
// derivative tracking the terminated sum severs the order-derivative, so the
// remainder is re-expanded through incomplete-gamma terms
//   R_l = (-1)^l 2 cos(nu pi) [ sum_{k<m} a_k(nu) x^{-k} G_{l-k}(2x) + ... ],
//   G_p(y) = e^y/(2 pi) Gamma(p) Gamma(1-p, y),
// whose cos(nu pi) factor vanishes in value at half-integers but not in d1.
namespace detail {
inline double g_term(int p, double y) {
    // e^y Gamma(1-p, y) evaluated through the prefactor-free continued
    // fraction to dodge overflow: G_p(y) = Gamma(p) y^{1-p} F(1-p, y)/(2 pi)
    const double f = gammainc_upper_cf(1.0 - double(p), y);
    return std::tgamma(double(p)) * std::pow(y, 1.0 - double(p)) * f /
           6.283185307179586;
}
}  // namespace detail

template <typename S>
S besselk_halfint(const S& nu, double x, bool tracking, int l, int m) {
    if (!(x > 0.0)) throw std::domain_error("besselk_halfint: x must be positive");
    const double nv = primal(nu);
    const int n = int(std::round(nv - 0.5));
    const double pref = std::sqrt(1.5707963267948966 / x) * std::exp(-x);
    const S nusq4 = 4.0 * (nu * nu);
    if (!tracking) {
        S t = S(1.0), sum = S(1.0);
        for (int k = 1; k <= n; ++k) {
            const double odd = 2.0 * k - 1.0;
            t = t * (nusq4 - odd * odd) / (8.0 * k * x);
            sum = sum + t;
        }
        return pref * sum;
    }
    if (m < 1 || m > 8) throw std::domain_error("besselk_halfint: remainder depth m must be in [1, 8]");
    const int lu = std::max({l, n + 1, m + 1});
    S acoef[8];  // first m <= 8 terms a_k(nu) x^{-k}, reused by the remainder
    S t = S(1.0), sum = S(1.0);
    acoef[0] = t;
    for (int k = 1; k < lu; ++k) {
        const double odd = 2.0 * k - 1.0;
        t = t * (nusq4 - odd * odd) / (8.0 * k * x);
        sum = sum + t;
        if (k < m) acoef[k] = t;
    }
    S gsum = S(0.0);
    for (int k = 0; k < m; ++k) gsum = gsum + acoef[k] * detail::g_term(lu - k, 2.0 * x);
    const double sgn2 = (lu % 2 == 0) ? 2.0 : -2.0;
    const S rem = sgn2 * cospi(nu) * gsum;
    return pref * (sum + rem);
}

// ------------------------------------------------------------- dispatchers

namespace detail {

inline bool promote_to_dd(double anu, double x, const BranchConfig& cfg) {
    if (x >= cfg.promote_x) return true;
    return x >= cfg.promote_nearint_x &&
           std::fabs(anu - std::round(anu)) < cfg.promote_nearint_window;
}

template <typename S>
S smallx_eval(const S& nu, double x, BranchTag tag, const BranchConfig& cfg, bool scaled) {
    const double anu = primal(nu);
    if constexpr (!is_dd_backed<S>) {
        if (promote_to_dd(anu, x, cfg)) {
            auto wide = widen(nu);
            const double tol = series_tol<decltype(wide)>(cfg.t1_tol);
            if (tag == BranchTag::TemmeIntRec)
                return narrow(scaled ? besselk_temme_scaled(wide, x, tol)
                                     : besselk_temme(wide, x, tol));
            return narrow(scaled ? besselk_series_scaled(wide, x, tol)
                                 : besselk_series(wide, x, tol));
        }
    }
    if (tag == BranchTag::TemmeIntRec)
        return scaled ? besselk_temme_scaled(nu, x, cfg.t1_tol)
                      : besselk_temme(nu, x, cfg.t1_tol);
    return scaled ? besselk_series_scaled(nu, x, cfg.t1_tol)
                  : besselk_series(nu, x, cfg.t1_tol);
}

template <typename S>
S besselk_dispatch(const S& signed_nu, double x, const BranchConfig& cfg, bool tracking) {
    if (!(x > 0.0)) throw std::domain_error("besselk: x must be positive");
    using std::abs;
    const S nu = abs(signed_nu);  // K_{-nu} = K_nu, routed bit-identically
    const BranchTag tag = select_branch(primal(nu), x, tracking, cfg);
    switch (tag) {
        case BranchTag::Series:
        case BranchTag::TemmeIntRec:
            return smallx_eval(nu, x, tag, cfg, /*scaled=*/false);
        case BranchTag::UAE:
            return besselk_uae(nu, x, uae_truncation(x, cfg));
        case BranchTag::LargeArg:
            return besselk_large_arg(nu, x, cfg.t4);
        case BranchTag::HalfIntExact:
            return besselk_halfint(nu, x, false, cfg.t4, 4);
        case BranchTag::HalfIntImproved: {
            const int n = int(std::round(primal(nu) - 0.5));
            return besselk_halfint(nu, x, true, std::max(cfg.t4, n + 1), 4);
        }
    }
    throw std::logic_error("besselk: unreachable");
}

}  // namespace detail

// K_nu(x); overloads return the same scalar kind they are given.
inline double besselk(double nu, double x, const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_dispatch(nu, x, cfg, false);
}
inline Dual1<double> besselk(const Dual1<double>& nu, double x,
                             const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_dispatch(nu, x, cfg, true);
}
inline Dual2<double> besselk(const Dual2<double>& nu, double x,
                             const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_dispatch(nu, x, cfg, true);
}

// x^nu K_nu(x) without the 0 * inf form; finite at x = 0 with value
// 2^{nu-1} Gamma(nu) and correct derivative slots.
namespace detail {
template <typename S>
S besselk_scaled_dispatch(const S& nu, double x, const BranchConfig& cfg, bool tracking) {
    using std::exp; using std::log; using std::pow;
    if (!(primal(nu) > 0.0)) {
        throw std::domain_error("besselk_xnu_scaled: order must be positive");
    }
    if (x == 0.0) return pow(S(2.0), nu - 1.0) * gamma_fn(nu);
    if (!(x > 0.0)) throw std::domain_error("besselk_xnu_scaled: x must be nonnegative");
    const BranchTag tag = select_branch(primal(nu), x, tracking, cfg);
    if (tag == BranchTag::Series || tag == BranchTag::TemmeIntRec)
        return smallx_eval(nu, x, tag, cfg, /*scaled=*/true);
    return exp(nu * std::log(x)) * besselk_dispatch(nu, x, cfg, tracking);
}
}  // namespace detail

inline double besselk_xnu_scaled(double nu, double x,
                                 const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_scaled_dispatch(nu, x, cfg, false);
}
inline Dual1<double> besselk_xnu_scaled(const Dual1<double>& nu, double x,
                                        const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_scaled_dispatch(nu, x, cfg, true);
}
inline Dual2<double> besselk_xnu_scaled(const Dual2<double>& nu, double x,
                                        const BranchConfig& cfg = default_branch_config()) {
    return detail::besselk_scaled_dispatch(nu, x, cfg, true);
}

struct BesselKDerivs {
    double value;
    double d1;
    double d2;
};

// Seeds nu, evaluates once, unpacks (value, d/dnu, d2/dnu2).
inline BesselKDerivs besselk_d1d2(double nu, double x,
                                  const BranchConfig& cfg = default_branch_config()) {
    const Dual2<double> r = besselk(Dual2<double>::seed(nu), x, cfg);
    return {r.val, r.d1, r.d2};
}

}  // namespace knu
