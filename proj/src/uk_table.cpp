#include "knu/uk_table.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <mutex>
#include <sstream>

namespace knu {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;  // ascending powers

RatPoly derivative(const RatPoly& u) {
    if (u.size() <= 1) return {Rational(0)};
    RatPoly d(u.size() - 1);
    for (size_t j = 1; j < u.size(); ++j) d[j - 1] = u[j] * int64_t(j);
    return d;
}

RatPoly shift(const RatPoly& u, int by) {
    RatPoly r(u.size() + size_t(by), Rational(0));
    for (size_t j = 0; j < u.size(); ++j) r[j + size_t(by)] = u[j];
    return r;
}

RatPoly add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t j = 0; j < a.size(); ++j) r[j] += a[j];
    for (size_t j = 0; j < b.size(); ++j) r[j] += b[j];
    return r;
}

RatPoly scale(RatPoly u, const Rational& c) {
    for (auto& v : u) v *= c;
    return u;
}

// U_{k+1}(p) = 1/2 p^2 (1 - p^2) U_k'(p) + 1/8 int_0^p (1 - 5 t^2) U_k(t) dt.
// (The antiderivative of a polynomial; the lower limit 0 is what reproduces
// U_1 = (3p - 5p^3)/24 and keeps U_k free of constant terms.)
RatPoly next_uk(const RatPoly& u) {
    const RatPoly du = derivative(u);
    // 1/2 p^2 du - 1/2 p^4 du
    RatPoly a = add(scale(shift(du, 2), Rational(1, 2)),
                    scale(shift(du, 4), Rational(-1, 2)));
    // integrand (1 - 5 t^2) U_k(t) = U_k - 5 t^2 U_k
    RatPoly w = add(u, scale(shift(u, 2), Rational(-5)));
    RatPoly anti(w.size() + 1, Rational(0));
    for (size_t j = 0; j < w.size(); ++j) anti[j + 1] = w[j] / int64_t(j + 1);
    return add(a, scale(anti, Rational(1, 8)));
}

}  // namespace

UkTable build_uk_table(int max_order) {
    if (max_order < 0 || max_order > 20)
        throw std::domain_error("build_uk_table: max_order must be in [0, 20]");
    std::vector<RatPoly> us;
    us.reserve(size_t(max_order) + 1);
    us.push_back({Rational(1)});
    for (int k = 0; k < max_order; ++k) us.push_back(next_uk(us.back()));

    UkTable t;
    t.max_order = max_order;
    t.polys.resize(size_t(max_order) + 1);
    t.exact.resize(size_t(max_order) + 1);
    t.qpolys.resize(size_t(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) {
        RatPoly& u = us[size_t(k)];
        u.resize(size_t(3 * k) + 1, Rational(0));
        auto& dbl = t.polys[size_t(k)];
        auto& ex = t.exact[size_t(k)];
        dbl.resize(u.size());
        ex.resize(u.size());
        for (size_t j = 0; j < u.size(); ++j) {
            dbl[j] = u[j].convert_to<double>();
            ex[j] = {boost::multiprecision::numerator(u[j]).str(),
                     boost::multiprecision::denominator(u[j]).str()};
            // sparsity invariant: only powers k, k+2, ..., 3k may be nonzero
            const bool allowed = int(j) >= k && (int(j) - k) % 2 == 0;
            if (!allowed && u[j] != 0)
                throw std::logic_error("build_uk_table: sparsity pattern violated");
        }
        auto& q = t.qpolys[size_t(k)];
        q.resize(size_t(k) + 1);
        for (int j = 0; j <= k; ++j) q[size_t(j)] = dbl[size_t(k + 2 * j)];
    }
    return t;
}

const UkTable& shared_uk_table() {
    static const UkTable table = build_uk_table(20);
    return table;
}

std::string uk_table_csv(const UkTable& table) {
    std::ostringstream os;
    os << "k,power,numerator,denominator\n";
    for (int k = 0; k <= table.max_order; ++k)
        for (size_t j = 0; j < table.exact[size_t(k)].size(); ++j) {
            const auto& [num, den] = table.exact[size_t(k)][j];
            if (num != "0") os << k << "," << j << "," << num << "," << den << "\n";
        }
    return os.str();
}

}  // namespace knu
