#include "knu/oracle/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace knu::oracle {

namespace {

// abscissa/weight of the tanh-sinh map u = tanh(pi/2 sinh(w)) on [-1, 1]
void ts_node(const BigFloat& w, mpfr_prec_t bits, BigFloat& u, BigFloat& weight) {
    BigFloat halfpi = pi_big(bits) / 2.0;
    BigFloat sw = sinh(w);
    BigFloat cw = cosh(w);
    BigFloat arg = halfpi * sw;
    u = tanh(arg);
    BigFloat ch = cosh(arg);
    weight = halfpi * cw / (ch * ch);
}

}  // namespace

BigFloat tanh_sinh(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a,
                   const BigFloat& b, int digits) {
    const mpfr_prec_t bits = BigFloat::bits_for_digits(digits + 10);
    const BigFloat mid = (a + b) / 2.0;
    const BigFloat halfw = (b - a) / 2.0;
    const double wmax = 4.6;  // tanh(pi/2 sinh 4.6) is 1 to ~10^-68
    BigFloat tol_ref(std::pow(10.0, -digits - 2), bits);

    auto eval_at = [&](double w) {
        BigFloat u(bits), weight(bits);
        ts_node(BigFloat(w, bits), bits, u, weight);
        BigFloat t = mid + halfw * u;
        // clamp into the open interval: the map can round onto an endpoint
        if (t <= a || t >= b) return BigFloat(0.0, bits);
        return weight * f(t);
    };

    double h = 1.0;
    BigFloat sum = eval_at(0.0);
    for (double w = h; w <= wmax; w += h) {
        sum += eval_at(w);
        sum += eval_at(-w);
    }
    BigFloat prev = sum * h;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (double w = h; w <= wmax; w += 2.0 * h) {
            sum += eval_at(w);
            sum += eval_at(-w);
        }
        BigFloat cur = sum * h;
        BigFloat diff = abs(cur - prev);
        BigFloat scale = abs(cur) + BigFloat(1e-300, bits);
        if (level >= 3 && diff < tol_ref * scale) return cur * halfw;
        prev = cur;
    }
    throw std::runtime_error("tanh_sinh: quadrature did not converge");
}

namespace {

// integrand exp(-x cosh t + log cosh(nu t)) with the t^k sinh/cosh factors
// for the differentiated versions
BigFloat k_integral(double nu, double x, int deriv, int digits) {
    const mpfr_prec_t bits = BigFloat::bits_for_digits(digits + 10);
    nu = std::fabs(nu);
    const double D = (double(digits) + 12.0) * 2.302585092994046;  // target in nats
    // exponent of the integrand peaks at t* = asinh(nu/x)
    const double tstar = nu > 0.0 ? std::asinh(nu / x) : 0.0;
    const double log_peak = -x * std::cosh(tstar) + nu * tstar;
    // truncate where -x cosh T + nu T + 3 log(1+T) has dropped D below the peak
    double T = std::max(1.0, tstar) + 1.0;
    while (-x * std::cosh(T) + nu * T + 3.0 * std::log(T + 1.0) > log_peak - D) T += 0.25;

    auto integrand = [&](const BigFloat& t) {
        BigFloat e = exp(BigFloat(-x, bits) * cosh(t));
        BigFloat nut = t * nu;
        BigFloat osc = (deriv == 1) ? sinh(nut) : cosh(nut);
        BigFloat r = e * osc;
        for (int j = 0; j < deriv; ++j) r *= t;
        return r;
    };

    // split at the interior maximum of the exponent so the double-exponential
    // clustering sees it as an endpoint
    const BigFloat zero(0.0, bits), big_t(T, bits);
    if (tstar > 0.05 && tstar < T - 0.05) {
        BigFloat ts(tstar, bits);
        return tanh_sinh(integrand, zero, ts, digits) + tanh_sinh(integrand, ts, big_t, digits);
    }
    return tanh_sinh(integrand, zero, big_t, digits);
}

}  // namespace

BigFloat oracle_besselk(double nu, double x, int digits) {
    if (!(x > 0.0)) throw std::domain_error("oracle_besselk: x must be positive");
    if (std::fabs(nu) > 50.0) throw std::domain_error("oracle_besselk: |nu| must be <= 50");
    if (digits > 100) throw std::domain_error("oracle_besselk: digits must be <= 100");
    return k_integral(nu, x, 0, digits);
}

BigFloat oracle_dnu_besselk(double nu, double x, int k, int digits) {
    if (k != 1 && k != 2) throw std::domain_error("oracle_dnu_besselk: k must be 1 or 2");
    const mpfr_prec_t bits = BigFloat::bits_for_digits(digits + 10);
    const double anu = std::fabs(nu);
    const double sgn = (nu < 0.0 && k == 1) ? -1.0 : 1.0;  // K even in nu

    BigFloat by_quadrature = k_integral(anu, x, k, digits);

    // extended-precision central differences of the value integral
    const double h = std::pow(10.0, -double(digits) / 4.0);
    BigFloat fp = k_integral(anu + h, x, 0, digits);
    BigFloat fm = k_integral(std::fabs(anu - h), x, 0, digits);
    BigFloat hb(h, bits);
    BigFloat by_fd(bits);
    if (k == 1) {
        by_fd = (fp - fm) / (hb * 2.0);
    } else {
        BigFloat f0 = k_integral(anu, x, 0, digits);
        by_fd = (fp - f0 * 2.0 + fm) / (hb * hb);
    }

    BigFloat diff = abs(by_quadrature - by_fd);
    BigFloat scale = abs(by_quadrature) + abs(by_fd) + BigFloat(1e-280, bits);
    if (!(diff / scale < BigFloat(1e-20, bits)))
        throw std::runtime_error("oracle_dnu_besselk: quadrature and FD branches disagree");
    return by_quadrature * sgn;
}

BigFloat oracle_besselk_series(double nu, double x, int digits) {
    const mpfr_prec_t bits = BigFloat::bits_for_digits(digits + 20);
    nu = std::fabs(nu);
    if (nu == std::floor(nu)) throw std::domain_error("oracle series: integer order");
    BigFloat nub(nu, bits);
    BigFloat halfx = BigFloat(x, bits) / 2.0;
    BigFloat gp = gamma(nub);            // Gamma(nu)
    BigFloat gm = gamma(-nub);           // Gamma(-nu)
    BigFloat gq1 = gamma(BigFloat(1.0, bits) - nub);
    BigFloat gq2 = gamma(BigFloat(1.0, bits) + nub);
    BigFloat xm = pow(halfx, -nub), xp = pow(halfx, nub);
    BigFloat a = gp * xm, b = gm * xp;
    BigFloat t1(1.0, bits), t2(1.0, bits);
    BigFloat w(0.5, bits);
    BigFloat q = halfx * halfx;
    BigFloat sum(0.0, bits);
    BigFloat tol(std::pow(10.0, -digits - 8), bits);
    for (int k = 0; k < 400; ++k) {
        BigFloat term = (a * (gq1 * t1) + b * (gq2 * t2)) * w;
        sum += term;
        if (k > 3 && abs(term) < tol * abs(sum)) return sum;
        t1 /= (BigFloat(1.0 + k, bits) - nub);
        t2 /= (BigFloat(1.0 + k, bits) + nub);
        w = w * q / double(k + 1);
    }
    throw std::runtime_error("oracle series: no convergence");
}

double oracle_matern_cov(double sigma, double rho, double nu, double d, int digits) {
    if (d == 0.0) return sigma * sigma;
    const mpfr_prec_t bits = BigFloat::bits_for_digits(digits + 10);
    // same double-rounded argument the main pipeline sees; everything after
    // that is extended precision
    const double zd = std::sqrt(2.0 * nu) * d / rho;
    BigFloat nb(nu, bits);
    BigFloat z(zd, bits);
    BigFloat k = oracle_besselk(nu, zd, digits);
    BigFloat c = pow(BigFloat(2.0, bits), BigFloat(1.0, bits) - nb) / gamma(nb);
    BigFloat m = BigFloat(sigma * sigma, bits) * c * pow(z, nb) * k;
    return m.to_double();
}

}  // namespace knu::oracle
