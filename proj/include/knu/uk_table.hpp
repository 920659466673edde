// U_k polynomial coefficients for the uniform asymptotic expansion, generated
// once from the degree-raising recursion in exact rational arithmetic and
// rendered to double only at the last step. U_k has degree 3k with nonzero
// coefficients only at powers p^k, p^{k+2}, ..., p^{3k}.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace knu {

struct UkTable {
    int max_order = 0;
    // polys[k] holds the coefficients of U_k(p) in ascending powers of p,
    // length 3k+1, zeros included.
    std::vector<std::vector<double>> polys;
    // exact[k][j] is the (numerator, denominator) pair for the p^j
    // coefficient, as decimal strings (denominator "1" for zero entries).
    std::vector<std::vector<std::pair<std::string, std::string>>> exact;
    // qpolys[k] holds Q_k with U_k(p) = p^k Q_k(p^2), ascending in p^2;
    // redundant with polys but cheaper to evaluate in the hot loop.
    std::vector<std::vector<double>> qpolys;
};

// Build the table up to U_{max_order}; max_order in [0, 20].
UkTable build_uk_table(int max_order);

// Process-wide table, grown on first use; safe to read concurrently after.
const UkTable& shared_uk_table();

// CSV debug dump: columns k, power, numerator, denominator (nonzero
// coefficients only).
std::string uk_table_csv(const UkTable& table);

// Horner evaluation of U_k(p); AD-transparent in the scalar.
template <typename S>
S eval_uk(const UkTable& table, int k, const S& p) {
    if (k < 0 || k > table.max_order) throw std::out_of_range("eval_uk: order out of range");
    const auto& c = table.polys[size_t(k)];
    S acc = S(c.back());
    for (size_t j = c.size() - 1; j-- > 0;) acc = acc * p + S(c[j]);
    return acc;
}

}  // namespace knu
