// Forward-mode scalars that carry derivatives with respect to one seed
// variable through arbitrary arithmetic. Dual2 tracks (value, f', f''),
// with the second slot storing f'' itself rather than f''/2. Dual1 is the
// first-order variant for paths that only need one derivative.
//
// Both are templated on the underlying real type so the same kernel code
// can run in double or in double-double (see doubledouble.hpp).

#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace knu {

inline constexpr double pi_const(double) { return 3.141592653589793; }

// sinpi/cospi for plain doubles: the reduction lands exactly on the
// half-integer lattice, so sin(pi*n) == 0 and cos(pi*(n+1/2)) == 0 exactly.
namespace detail {
inline int quadrant_of(double t, double& r) noexcept {
    const double u = 2.0 * t;
    const double k = std::nearbyint(u);
    r = 0.5 * (u - k);  // |r| <= 0.25, and u - k is exact
    int q = static_cast<int>(std::fmod(k, 4.0));
    if (q < 0) q += 4;
    return q;
}
}  // namespace detail

inline double sinpi(double t) noexcept {
    double r;
    switch (detail::quadrant_of(t, r)) {
        case 0: return std::sin(3.141592653589793 * r);
        case 1: return std::cos(3.141592653589793 * r);
        case 2: return -std::sin(3.141592653589793 * r);
        default: return -std::cos(3.141592653589793 * r);
    }
}

inline double cospi(double t) noexcept {
    double r;
    switch (detail::quadrant_of(t, r)) {
        case 0: return std::cos(3.141592653589793 * r);
        case 1: return -std::sin(3.141592653589793 * r);
        case 2: return -std::cos(3.141592653589793 * r);
        default: return std::sin(3.141592653589793 * r);
    }
}

inline double to_double(double x) noexcept { return x; }

template <typename T>
struct Dual1 {
    T val{};
    T d1{};

    constexpr Dual1() = default;
    constexpr Dual1(const T& v) : val(v), d1(T(0.0)) {}
    constexpr Dual1(const T& v, const T& a) : val(v), d1(a) {}

    static constexpr Dual1 seed(const T& x) { return {x, T(1.0)}; }
    static constexpr Dual1 lift(const T& c) { return {c, T(0.0)}; }
};

template <typename T>
struct Dual2 {
    T val{};
    T d1{};
    T d2{};  // stores f'', not f''/2

    constexpr Dual2() = default;
    constexpr Dual2(const T& v) : val(v), d1(T(0.0)), d2(T(0.0)) {}
    constexpr Dual2(const T& v, const T& a, const T& b) : val(v), d1(a), d2(b) {}

    static constexpr Dual2 seed(const T& x) { return {x, T(1.0), T(0.0)}; }
    static constexpr Dual2 lift(const T& c) { return {c, T(0.0), T(0.0)}; }
};

// Spec-facing shorthands on the default scalar.
inline constexpr Dual2<double> seed(double x) { return {x, 1.0, 0.0}; }
inline constexpr Dual2<double> lift(double c) { return {c, 0.0, 0.0}; }

template <typename T> struct is_dual : std::false_type {};
template <typename T> struct is_dual<Dual1<T>> : std::true_type {};
template <typename T> struct is_dual<Dual2<T>> : std::true_type {};
template <typename T> inline constexpr bool is_dual_v = is_dual<T>::value;

template <typename T> inline double primal(const T& x) { return to_double(x); }
template <typename T> inline double primal(const Dual1<T>& x) { return to_double(x.val); }
template <typename T> inline double primal(const Dual2<T>& x) { return to_double(x.val); }

// ---------------------------------------------------------------- Dual1 ops

template <typename T>
constexpr Dual1<T> operator+(const Dual1<T>& a, const Dual1<T>& b) {
    return {a.val + b.val, a.d1 + b.d1};
}
template <typename T>
constexpr Dual1<T> operator-(const Dual1<T>& a, const Dual1<T>& b) {
    return {a.val - b.val, a.d1 - b.d1};
}
template <typename T>
constexpr Dual1<T> operator-(const Dual1<T>& a) {
    return {-a.val, -a.d1};
}
template <typename T>
constexpr Dual1<T> operator*(const Dual1<T>& a, const Dual1<T>& b) {
    return {a.val * b.val, a.d1 * b.val + a.val * b.d1};
}
template <typename T>
constexpr Dual1<T> operator/(const Dual1<T>& a, const Dual1<T>& b) {
    if (b.val == T(0.0)) throw std::domain_error("Dual1: division by zero-valued dual");
    const T inv = T(1.0) / b.val;
    const T q = a.val * inv;
    return {q, (a.d1 - q * b.d1) * inv};
}

template <typename T> constexpr Dual1<T> operator+(const Dual1<T>& a, const T& c) { return {a.val + c, a.d1}; }
template <typename T> constexpr Dual1<T> operator+(const T& c, const Dual1<T>& a) { return {c + a.val, a.d1}; }
template <typename T> constexpr Dual1<T> operator-(const Dual1<T>& a, const T& c) { return {a.val - c, a.d1}; }
template <typename T> constexpr Dual1<T> operator-(const T& c, const Dual1<T>& a) { return {c - a.val, -a.d1}; }
template <typename T> constexpr Dual1<T> operator*(const Dual1<T>& a, const T& c) { return {a.val * c, a.d1 * c}; }
template <typename T> constexpr Dual1<T> operator*(const T& c, const Dual1<T>& a) { return {c * a.val, c * a.d1}; }
template <typename T> constexpr Dual1<T> operator/(const Dual1<T>& a, const T& c) { return {a.val / c, a.d1 / c}; }
template <typename T> constexpr Dual1<T> operator/(const T& c, const Dual1<T>& a) {
    if (a.val == T(0.0)) throw std::domain_error("Dual1: division by zero-valued dual");
    const T inv = T(1.0) / a.val;
    const T q = c * inv;
    return {q, -q * a.d1 * inv};
}

// double mixes for T != double (e.g. Dual1<DoubleDouble> * 2.0)
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator+(const Dual1<T>& a, double c) { return a + T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator+(double c, const Dual1<T>& a) { return T(c) + a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator-(const Dual1<T>& a, double c) { return a - T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator-(double c, const Dual1<T>& a) { return T(c) - a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator*(const Dual1<T>& a, double c) { return a * T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator*(double c, const Dual1<T>& a) { return T(c) * a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator/(const Dual1<T>& a, double c) { return a / T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual1<T> operator/(double c, const Dual1<T>& a) { return T(c) / a; }

// ---------------------------------------------------------------- Dual2 ops

template <typename T>
constexpr Dual2<T> operator+(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.val + b.val, a.d1 + b.d1, a.d2 + b.d2};
}
template <typename T>
constexpr Dual2<T> operator-(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.val - b.val, a.d1 - b.d1, a.d2 - b.d2};
}
template <typename T>
constexpr Dual2<T> operator-(const Dual2<T>& a) {
    return {-a.val, -a.d1, -a.d2};
}
template <typename T>
constexpr Dual2<T> operator*(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.val * b.val,
            a.d1 * b.val + a.val * b.d1,
            a.d2 * b.val + T(2.0) * a.d1 * b.d1 + a.val * b.d2};
}
template <typename T>
constexpr Dual2<T> operator/(const Dual2<T>& a, const Dual2<T>& b) {
    if (b.val == T(0.0)) throw std::domain_error("Dual2: division by zero-valued dual");
    const T inv = T(1.0) / b.val;
    const T q = a.val * inv;
    const T q1 = (a.d1 - q * b.d1) * inv;
    return {q, q1, (a.d2 - T(2.0) * q1 * b.d1 - q * b.d2) * inv};
}

template <typename T> constexpr Dual2<T> operator+(const Dual2<T>& a, const T& c) { return {a.val + c, a.d1, a.d2}; }
template <typename T> constexpr Dual2<T> operator+(const T& c, const Dual2<T>& a) { return {c + a.val, a.d1, a.d2}; }
template <typename T> constexpr Dual2<T> operator-(const Dual2<T>& a, const T& c) { return {a.val - c, a.d1, a.d2}; }
template <typename T> constexpr Dual2<T> operator-(const T& c, const Dual2<T>& a) { return {c - a.val, -a.d1, -a.d2}; }
template <typename T> constexpr Dual2<T> operator*(const Dual2<T>& a, const T& c) { return {a.val * c, a.d1 * c, a.d2 * c}; }
template <typename T> constexpr Dual2<T> operator*(const T& c, const Dual2<T>& a) { return {c * a.val, c * a.d1, c * a.d2}; }
template <typename T> constexpr Dual2<T> operator/(const Dual2<T>& a, const T& c) { return {a.val / c, a.d1 / c, a.d2 / c}; }
template <typename T> constexpr Dual2<T> operator/(const T& c, const Dual2<T>& a) {
    if (a.val == T(0.0)) throw std::domain_error("Dual2: division by zero-valued dual");
    const T inv = T(1.0) / a.val;
    const T q = c * inv;
    const T q1 = -q * a.d1 * inv;
    return {q, q1, (-T(2.0) * q1 * a.d1 - q * a.d2) * inv};
}

template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator+(const Dual2<T>& a, double c) { return a + T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator+(double c, const Dual2<T>& a) { return T(c) + a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator-(const Dual2<T>& a, double c) { return a - T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator-(double c, const Dual2<T>& a) { return T(c) - a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator*(const Dual2<T>& a, double c) { return a * T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator*(double c, const Dual2<T>& a) { return T(c) * a; }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator/(const Dual2<T>& a, double c) { return a / T(c); }
template <typename T, typename = std::enable_if_t<!std::is_same_v<T, double>>>
constexpr Dual2<T> operator/(double c, const Dual2<T>& a) { return T(c) / a; }

// ------------------------------------------------------- elementary rules
//
// Unary chain rule: d1 = f'(v) a.d1, d2 = f''(v) a.d1^2 + f'(v) a.d2.

namespace detail {
template <typename T>
constexpr Dual1<T> chain(const Dual1<T>& a, const T& f, const T& fp) {
    return {f, fp * a.d1};
}
template <typename T>
constexpr Dual2<T> chain(const Dual2<T>& a, const T& f, const T& fp, const T& fpp) {
    return {f, fp * a.d1, fpp * a.d1 * a.d1 + fp * a.d2};
}
}  // namespace detail

template <typename T>
Dual1<T> exp(const Dual1<T>& a) {
    using std::exp;
    const T e = exp(a.val);
    return detail::chain(a, e, e);
}
template <typename T>
Dual2<T> exp(const Dual2<T>& a) {
    using std::exp;
    const T e = exp(a.val);
    return detail::chain(a, e, e, e);
}

template <typename T>
Dual1<T> log(const Dual1<T>& a) {
    using std::log;
    if (!(to_double(a.val) > 0.0)) throw std::domain_error("dual log: nonpositive argument");
    return detail::chain(a, log(a.val), T(1.0) / a.val);
}
template <typename T>
Dual2<T> log(const Dual2<T>& a) {
    using std::log;
    if (!(to_double(a.val) > 0.0)) throw std::domain_error("dual log: nonpositive argument");
    const T inv = T(1.0) / a.val;
    return detail::chain(a, log(a.val), inv, -inv * inv);
}

template <typename T>
Dual1<T> sqrt(const Dual1<T>& a) {
    using std::sqrt;
    if (to_double(a.val) < 0.0) throw std::domain_error("dual sqrt: negative argument");
    const T r = sqrt(a.val);
    return detail::chain(a, r, T(0.5) / r);
}
template <typename T>
Dual2<T> sqrt(const Dual2<T>& a) {
    using std::sqrt;
    if (to_double(a.val) < 0.0) throw std::domain_error("dual sqrt: negative argument");
    const T r = sqrt(a.val);
    const T fp = T(0.5) / r;
    return detail::chain(a, r, fp, T(-0.5) * fp / a.val);
}

template <typename T>
Dual1<T> sinh(const Dual1<T>& a) {
    using std::cosh; using std::sinh;
    return detail::chain(a, sinh(a.val), cosh(a.val));
}
template <typename T>
Dual2<T> sinh(const Dual2<T>& a) {
    using std::cosh; using std::sinh;
    const T s = sinh(a.val), c = cosh(a.val);
    return detail::chain(a, s, c, s);
}

template <typename T>
Dual1<T> cosh(const Dual1<T>& a) {
    using std::cosh; using std::sinh;
    return detail::chain(a, cosh(a.val), sinh(a.val));
}
template <typename T>
Dual2<T> cosh(const Dual2<T>& a) {
    using std::cosh; using std::sinh;
    const T c = cosh(a.val), s = sinh(a.val);
    return detail::chain(a, c, s, c);
}

template <typename T>
Dual1<T> sin(const Dual1<T>& a) {
    using std::cos; using std::sin;
    return detail::chain(a, sin(a.val), cos(a.val));
}
template <typename T>
Dual2<T> sin(const Dual2<T>& a) {
    using std::cos; using std::sin;
    const T s = sin(a.val), c = cos(a.val);
    return detail::chain(a, s, c, -s);
}

template <typename T>
Dual1<T> cos(const Dual1<T>& a) {
    using std::cos; using std::sin;
    return detail::chain(a, cos(a.val), -sin(a.val));
}
template <typename T>
Dual2<T> cos(const Dual2<T>& a) {
    using std::cos; using std::sin;
    const T c = cos(a.val), s = sin(a.val);
    return detail::chain(a, c, -s, -c);
}

// sin(pi t), cos(pi t) as elementals: the exact zeros at (half-)integer t
// matter for the Bessel branch structure, so these never go through a
// rounded pi*t product.
template <typename T>
Dual1<T> sinpi(const Dual1<T>& a) {
    const T s = sinpi(a.val), c = cospi(a.val);
    const T pi_ = pi_const(T{});
    return detail::chain(a, s, pi_ * c);
}
template <typename T>
Dual2<T> sinpi(const Dual2<T>& a) {
    const T s = sinpi(a.val), c = cospi(a.val);
    const T pi_ = pi_const(T{});
    return detail::chain(a, s, pi_ * c, -pi_ * pi_ * s);
}
template <typename T>
Dual1<T> cospi(const Dual1<T>& a) {
    const T s = sinpi(a.val), c = cospi(a.val);
    const T pi_ = pi_const(T{});
    return detail::chain(a, c, -pi_ * s);
}
template <typename T>
Dual2<T> cospi(const Dual2<T>& a) {
    const T s = sinpi(a.val), c = cospi(a.val);
    const T pi_ = pi_const(T{});
    return detail::chain(a, c, -pi_ * s, -pi_ * pi_ * c);
}

// Subgradient convention: abs at 0 has zero derivative slots. Never hit on
// the K_nu domain; documented for completeness.
template <typename T>
constexpr Dual1<T> abs(const Dual1<T>& a) {
    const double v = to_double(a.val);
    if (v > 0.0) return a;
    if (v < 0.0) return -a;
    return {a.val, T(0.0)};
}
template <typename T>
constexpr Dual2<T> abs(const Dual2<T>& a) {
    const double v = to_double(a.val);
    if (v > 0.0) return a;
    if (v < 0.0) return -a;
    return {a.val, T(0.0), T(0.0)};
}

// pow with constant exponent / constant base, plus the general dual^dual.
template <typename T, typename C>
Dual1<T> pow(const Dual1<T>& a, C cexp) {
    using std::pow;
    const T c = T(double(cexp));
    const T f = pow(a.val, c);
    return detail::chain(a, f, c * pow(a.val, c - T(1.0)));
}
template <typename T, typename C>
Dual2<T> pow(const Dual2<T>& a, C cexp) {
    using std::pow;
    const T c = T(double(cexp));
    return detail::chain(a, pow(a.val, c), c * pow(a.val, c - T(1.0)),
                         c * (c - T(1.0)) * pow(a.val, c - T(2.0)));
}
template <typename T, typename C>
Dual1<T> pow(C cbase, const Dual1<T>& b) {
    using std::log; using std::pow;
    const T c = T(double(cbase));
    const T f = pow(c, b.val);
    const T lc = log(c);
    return detail::chain(b, f, f * lc);
}
template <typename T, typename C>
Dual2<T> pow(C cbase, const Dual2<T>& b) {
    using std::log; using std::pow;
    const T c = T(double(cbase));
    const T f = pow(c, b.val);
    const T lc = log(c);
    return detail::chain(b, f, f * lc, f * lc * lc);
}
template <typename T>
Dual1<T> pow(const Dual1<T>& a, const Dual1<T>& b) {
    return exp(b * log(a));
}
template <typename T>
Dual2<T> pow(const Dual2<T>& a, const Dual2<T>& b) {
    return exp(b * log(a));
}

}  // namespace knu
