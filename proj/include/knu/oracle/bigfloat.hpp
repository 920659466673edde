// Value-semantic wrapper around MPFR: a fixed-precision big float whose
// working precision is a construction-time parameter. Used only by the
// reference oracle, tests, and the diagnostics CLI; the core library never
// links against it.

#pragma once

#include <mpfr.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace knu::oracle {

class BigFloat {
  public:
    static constexpr double kBitsPerDigit = 3.3219280948873623;

    static mpfr_prec_t bits_for_digits(int digits) {
        return mpfr_prec_t(double(digits) * kBitsPerDigit) + 16;
    }

    explicit BigFloat(mpfr_prec_t bits = 192) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const std::string& s, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::domain_error("BigFloat: cannot parse '" + s + "'");
    }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 30) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator*(const BigFloat& a, double b) {
        BigFloat r(a.precision());
        mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(double a, const BigFloat& b) { return b * a; }
    friend BigFloat operator/(const BigFloat& a, double b) {
        BigFloat r(a.precision());
        mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, double b) {
        BigFloat r(a.precision());
        mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, double b) {
        BigFloat r(a.precision());
        mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  private:
    mpfr_t v_;
};

#define KNU_BF_UNARY(name, mpfr_name)                          \
    inline BigFloat name(const BigFloat& a) {                  \
        BigFloat r(a.precision());                             \
        mpfr_name(r.raw(), a.raw(), MPFR_RNDN);                \
        return r;                                              \
    }
KNU_BF_UNARY(exp, mpfr_exp)
KNU_BF_UNARY(log, mpfr_log)
KNU_BF_UNARY(sqrt, mpfr_sqrt)
KNU_BF_UNARY(cosh, mpfr_cosh)
KNU_BF_UNARY(sinh, mpfr_sinh)
KNU_BF_UNARY(tanh, mpfr_tanh)
KNU_BF_UNARY(cos, mpfr_cos)
KNU_BF_UNARY(sin, mpfr_sin)
KNU_BF_UNARY(gamma, mpfr_gamma)
KNU_BF_UNARY(abs, mpfr_abs)
#undef KNU_BF_UNARY

inline BigFloat pow(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

inline BigFloat pi_big(mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

}  // namespace knu::oracle
