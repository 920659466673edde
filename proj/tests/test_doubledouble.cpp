#include "doctest.h"

#include <cmath>
#include <random>

#include "knu/doubledouble.hpp"
#include "knu/oracle/bigfloat.hpp"

using knu::DD;
using knu::oracle::BigFloat;

namespace {

constexpr mpfr_prec_t kBits = 160;

double dd_vs_big(const DD& a, const BigFloat& b) {
    BigFloat ad(a.hi, kBits);
    ad += BigFloat(a.lo, kBits);
    BigFloat diff = abs(ad - b);
    BigFloat scale = abs(b) + BigFloat(1e-300, kBits);
    return (diff / scale).to_double();
}

}  // namespace

TEST_CASE("dd arithmetic round-trips") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double a = unif(rng), b = unif(rng);
        DD s = DD(a) + DD(b);
        DD r = s - DD(a);
        CHECK(std::fabs(to_double(r - DD(b))) <= 1e-30 * (std::fabs(b) + 1.0));
        if (b != 0.0) {
            DD p = DD(a) * DD(b);
            DD q = p / DD(b);
            CHECK(std::fabs(to_double(q - DD(a))) <= 1e-29 * (std::fabs(a) + 1.0));
        }
    }
}

TEST_CASE("dd sqrt") {
    DD r = knu::sqrt(DD(2.0));
    DD back = r * r - DD(2.0);
    CHECK(std::fabs(to_double(back)) < 1e-31);
}

TEST_CASE("dd exp/log against mpfr") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> unif(-20.0, 20.0);
    for (int i = 0; i < 120; ++i) {
        const double x = unif(rng);
        CHECK(dd_vs_big(knu::exp(DD(x)), exp(BigFloat(x, kBits))) < 2e-30);
        if (x > 0.0) CHECK(dd_vs_big(knu::log(DD(x)), log(BigFloat(x, kBits))) < 2e-30);
    }
    // roundtrip
    for (int i = 0; i < 40; ++i) {
        const double x = unif(rng);
        DD r = knu::log(knu::exp(DD(x)));
        CHECK(std::fabs(to_double(r - DD(x))) <= 2e-30 * (std::fabs(x) + 1.0));
    }
}

TEST_CASE("dd sinh/cosh against mpfr") {
    std::mt19937_64 rng(56);
    std::uniform_real_distribution<double> unif(-8.0, 8.0);
    for (int i = 0; i < 80; ++i) {
        const double x = unif(rng);
        CHECK(dd_vs_big(knu::sinh(DD(x)), sinh(BigFloat(x, kBits))) < 4e-30);
        CHECK(dd_vs_big(knu::cosh(DD(x)), cosh(BigFloat(x, kBits))) < 4e-30);
    }
}

TEST_CASE("dd sinpi/cospi: lattice zeros and mpfr agreement") {
    CHECK(to_double(knu::sinpi(DD(3.0))) == 0.0);
    CHECK(to_double(knu::cospi(DD(0.5))) == 0.0);
    CHECK(to_double(knu::sinpi(DD(0.5))) == 1.0);

    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> unif(-10.0, 10.0);
    BigFloat pi = knu::oracle::pi_big(kBits);
    for (int i = 0; i < 80; ++i) {
        const double t = unif(rng);
        BigFloat ref_s = sin(BigFloat(t, kBits) * pi);
        BigFloat ref_c = cos(BigFloat(t, kBits) * pi);
        BigFloat scale(1.0, kBits);
        BigFloat ds = abs((BigFloat(knu::sinpi(DD(t)).hi, kBits) +
                           BigFloat(knu::sinpi(DD(t)).lo, kBits)) - ref_s);
        BigFloat dc = abs((BigFloat(knu::cospi(DD(t)).hi, kBits) +
                           BigFloat(knu::cospi(DD(t)).lo, kBits)) - ref_c);
        CHECK((ds / scale).to_double() < 3e-31);
        CHECK((dc / scale).to_double() < 3e-31);
    }
}

TEST_CASE("dd reciprocal gamma series against mpfr") {
    std::mt19937_64 rng(58);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    for (int i = 0; i < 60; ++i) {
        const double z = unif(rng);
        BigFloat ref = BigFloat(1.0, kBits) / gamma(BigFloat(1.0 + z, kBits));
        CHECK(dd_vs_big(knu::recip_gamma1p(DD(z)), ref) < 3e-30);
    }
    // double flavor too
    for (int i = 0; i < 60; ++i) {
        const double z = unif(rng);
        const double ref = (BigFloat(1.0, kBits) / gamma(BigFloat(1.0 + z, kBits))).to_double();
        CHECK(knu::recip_gamma1p(z) == doctest::Approx(ref).epsilon(4e-16));
    }
}
