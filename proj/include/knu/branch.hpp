// Domain partition for K_nu(x): which evaluation strategy serves a given
// (nu, x), following the flowchart structure with tunable thresholds.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace knu {

enum class BranchTag : uint8_t {
    Series,           // small argument, order away from integers
    TemmeIntRec,      // small argument, order at/near an integer
    UAE,              // uniform (large-order) asymptotic expansion
    LargeArg,         // plain large-argument expansion
    HalfIntExact,     // terminating half-integer sum (no derivative tracking)
    HalfIntImproved,  // half-integer sum plus incomplete-gamma remainder (tracked)
};

const char* branch_name(BranchTag t);
BranchTag branch_from_name(const std::string& name);

struct BranchConfig {
    // argument thresholds and the large-x order threshold
    double a1 = 12.0;
    double a2 = 15.0;
    double a3 = 30.0;
    double nu1 = 1.5;
    // series stopping tolerance (relative step across all derivative slots)
    double t1_tol = 1e-14;
    // truncations: highest retained term index of each expansion
    int t2 = 16;
    int t3 = 12;
    int t4 = 6;
    double near_int_tol = 1e-4;
    double half_int_tol = 1e-12;
    double halfint_min_x = 12.0;
    // Accuracy guards: the small-x representations trade ~e^{2x} of
    // cancellation; past these thresholds they run in double-double and
    // round at the end. promote_x covers all orders, the near-integer pair
    // covers the sin(pi nu)-amplified band around integer orders.
    double promote_x = 8.25;
    double promote_nearint_x = 3.5;
    double promote_nearint_window = 0.05;

    void validate() const {
        if (!(0.0 < a1 && a1 < a2 && a2 < a3)) throw std::domain_error("BranchConfig: need 0 < a1 < a2 < a3");
        if (t2 < 1 || t3 < 1 || t4 < 1) throw std::domain_error("BranchConfig: truncations must be >= 1");
        auto tol_ok = [](double t) { return t > 0.0 && t < 1e-2; };
        if (!tol_ok(t1_tol) || !tol_ok(near_int_tol) || !tol_ok(half_int_tol))
            throw std::domain_error("BranchConfig: tolerances must lie in (0, 1e-2)");
    }
};

inline const BranchConfig& default_branch_config() {
    static const BranchConfig cfg{};
    return cfg;
}

// Pure function of (|nu|, x, tracking flag, config); tested half-integer
// first, then the small-argument split, then the two asymptotic regimes.
inline BranchTag select_branch(double nu, double x, bool tracking,
                               const BranchConfig& cfg = default_branch_config()) {
    if (!(x > 0.0)) throw std::domain_error("select_branch: x must be positive");
    nu = std::fabs(nu);
    const double nearest_half = std::round(nu - 0.5) + 0.5;
    if (std::fabs(nu - nearest_half) < cfg.half_int_tol && x >= cfg.halfint_min_x)
        return tracking ? BranchTag::HalfIntImproved : BranchTag::HalfIntExact;
    if (x < cfg.a1) {
        if (std::fabs(nu - std::round(nu)) < cfg.near_int_tol) return BranchTag::TemmeIntRec;
        return BranchTag::Series;
    }
    if (x < cfg.a3) return BranchTag::UAE;
    return nu > cfg.nu1 ? BranchTag::UAE : BranchTag::LargeArg;
}

// Truncation used by the UAE at a given x (t2 below a2, t3 at or above).
inline int uae_truncation(double x, const BranchConfig& cfg) {
    return x < cfg.a2 ? cfg.t2 : cfg.t3;
}

inline const char* branch_name(BranchTag t) {
    switch (t) {
        case BranchTag::Series: return "Series";
        case BranchTag::TemmeIntRec: return "TemmeIntRec";
        case BranchTag::UAE: return "UAE";
        case BranchTag::LargeArg: return "LargeArg";
        case BranchTag::HalfIntExact: return "HalfIntExact";
        case BranchTag::HalfIntImproved: return "HalfIntImproved";
    }
    return "?";
}

inline BranchTag branch_from_name(const std::string& name) {
    for (auto t : {BranchTag::Series, BranchTag::TemmeIntRec, BranchTag::UAE,
                   BranchTag::LargeArg, BranchTag::HalfIntExact, BranchTag::HalfIntImproved})
        if (name == branch_name(t)) return t;
    throw std::domain_error("unknown branch name: " + name);
}

}  // namespace knu
