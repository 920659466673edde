#include "doctest.h"

#include <cmath>
#include <random>

#include "knu/doubledouble.hpp"
#include "knu/dual.hpp"

using knu::Dual2;
using knu::lift;
using knu::seed;

namespace {

// a composite expression exercising most of the rule table
template <typename S>
S composite(const S& x) {
    using std::exp; using std::log; using std::sqrt; using std::sin; using std::cosh;
    return exp(sin(x)) * log(1.0 + x * x) / sqrt(x) + pow(x, 2.5) * cosh(x / 3.0) - 2.0 * x;
}

double composite_plain(double x) {
    return std::exp(std::sin(x)) * std::log(1.0 + x * x) / std::sqrt(x) +
           std::pow(x, 2.5) * std::cosh(x / 3.0) - 2.0 * x;
}

double ulp_distance(double a, double b) {
    if (a == b) return 0.0;
    const double u = std::fabs(a) * std::numeric_limits<double>::epsilon();
    return std::fabs(a - b) / (u > 0 ? u : std::numeric_limits<double>::denorm_min());
}

}  // namespace

TEST_CASE("seed and lift") {
    auto s = seed(3.0);
    CHECK(s.val == 3.0);
    CHECK(s.d1 == 1.0);
    CHECK(s.d2 == 0.0);
    auto z = seed(0.0);
    CHECK(z.val == 0.0);
    CHECK(z.d1 == 1.0);
    auto c = lift(5.0);
    CHECK(c.val == 5.0);
    CHECK(c.d1 == 0.0);
    CHECK(c.d2 == 0.0);
}

TEST_CASE("arithmetic rules") {
    auto sq = seed(3.0) * seed(3.0);  // x^2 at 3
    CHECK(sq.val == 9.0);
    CHECK(sq.d1 == 6.0);
    CHECK(sq.d2 == 2.0);

    auto s = seed(2.0) + lift(1.0);
    CHECK(s.val == 3.0);
    CHECK(s.d1 == 1.0);
    CHECK(s.d2 == 0.0);

    auto q = lift(1.0) / seed(2.0);  // 1/x at 2
    CHECK(q.val == 0.5);
    CHECK(q.d1 == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(q.d2 == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("elementary rules") {
    const double e = std::exp(1.0);
    auto ex = exp(seed(1.0));
    CHECK(ex.val == doctest::Approx(e).epsilon(1e-15));
    CHECK(ex.d1 == doctest::Approx(e).epsilon(1e-15));
    CHECK(ex.d2 == doctest::Approx(e).epsilon(1e-15));

    auto lg = log(seed(2.0));
    CHECK(lg.val == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(lg.d1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lg.d2 == doctest::Approx(-0.25).epsilon(1e-15));

    auto pw = pow(seed(2.0), 3);  // x^3
    CHECK(pw.val == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(pw.d1 == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(pw.d2 == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("derivatives match finite differences on a composite expression") {
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> unif(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double x = unif(rng);
        const auto d = composite(seed(x));
        const double h1 = 1e-6;
        const double fd1 = (composite_plain(x + h1) - composite_plain(x - h1)) / (2.0 * h1);
        CHECK(d.d1 == doctest::Approx(fd1).epsilon(1e-5));
        const double h2 = 1e-4;
        const double fd2 =
            (composite_plain(x + h2) - 2.0 * composite_plain(x) + composite_plain(x - h2)) /
            (h2 * h2);
        CHECK(d.d2 == doctest::Approx(fd2).epsilon(1e-3));
    }
}

TEST_CASE("polynomial exactness to a few ulps") {
    // reference derivatives in double-double, so the ulp distance measures
    // only the dual chain's own rounding; skip draws where p' itself cancels
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int tested = 0;
    while (tested < 50) {
        const double a = unif(rng), b = unif(rng), c = unif(rng), d0 = unif(rng);
        const double x = unif(rng);
        using knu::DD;
        const DD xd(x);
        const DD dp_dd = (DD(3.0 * a) * xd + DD(2.0 * b)) * xd + DD(c);
        const DD ddp_dd = DD(6.0 * a) * xd + DD(2.0 * b);
        const double scale1 = std::fabs(3.0 * a * x * x) + std::fabs(2.0 * b * x) + std::fabs(c);
        const double scale2 = std::fabs(6.0 * a * x) + std::fabs(2.0 * b);
        if (std::fabs(to_double(dp_dd)) < 0.05 * scale1) continue;
        if (std::fabs(to_double(ddp_dd)) < 0.05 * scale2) continue;
        ++tested;
        auto xs = seed(x);
        auto p = ((lift(a) * xs + lift(b)) * xs + lift(c)) * xs + lift(d0);
        CHECK(ulp_distance(p.d1, to_double(dp_dd)) <= 4.0);
        CHECK(ulp_distance(p.d2, to_double(ddp_dd)) <= 4.0);
    }
}

TEST_CASE("exp(log(x)) identity in all slots") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double x = unif(rng);
        auto r = exp(log(seed(x)));
        CHECK(r.val == doctest::Approx(x).epsilon(1e-14));
        CHECK(r.d1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(r.d2) <= 1e-14 * std::max(1.0, std::fabs(x)));
    }
}

TEST_CASE("division by zero-valued dual signals a domain error") {
    CHECK_THROWS_AS(lift(1.0) / seed(0.0), std::domain_error);
    CHECK_THROWS_AS(log(seed(-1.0)), std::domain_error);
    CHECK_THROWS_AS(sqrt(seed(-2.0)), std::domain_error);
}

TEST_CASE("abs subgradient at zero") {
    auto a = abs(seed(0.0));
    CHECK(a.val == 0.0);
    CHECK(a.d1 == 0.0);
    CHECK(a.d2 == 0.0);
    auto b = abs(seed(-3.0));
    CHECK(b.val == 3.0);
    CHECK(b.d1 == -1.0);
}

TEST_CASE("sinpi/cospi land exactly on the lattice") {
    CHECK(knu::sinpi(1.0) == 0.0);
    CHECK(knu::sinpi(2.0) == 0.0);
    CHECK(knu::sinpi(-3.0) == 0.0);
    CHECK(knu::cospi(0.5) == 0.0);
    CHECK(knu::cospi(2.5) == 0.0);
    CHECK(knu::sinpi(0.5) == 1.0);
    CHECK(knu::cospi(1.0) == -1.0);
    CHECK(knu::sinpi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    // cos(nu pi) at a half-integer: zero value, derivative -pi * sin = -+pi
    auto c = cospi(seed(0.5));
    CHECK(c.val == 0.0);
    CHECK(c.d1 == doctest::Approx(-3.141592653589793).epsilon(1e-15));
}

TEST_CASE("first-order duals agree with second-order") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.2, 5.0);
    for (int i = 0; i < 20; ++i) {
        const double x = unif(rng);
        const auto d2 = composite(seed(x));
        const auto d1 = composite(knu::Dual1<double>::seed(x));
        CHECK(d1.val == d2.val);
        CHECK(d1.d1 == d2.d1);
    }
}
