#include "gapcert/bounds.hpp"

#include <cmath>
#include <string>

namespace gapcert {

double abc_bound(double gap_B, double c1, double norm_C) {
    if (!(gap_B > 0.0)) throw DomainError("abc_bound: gap_B must be positive");
    if (!(c1 > 0.0)) throw DomainError("abc_bound: c1 must be positive");
    if (norm_C < 0.0) throw DomainError("abc_bound: norm_C must be >= 0");
    return gap_B * c1 / (gap_B + c1 + norm_C);
}

double knabe_bound(double g_bar, double x) { return g_bar - 2.0 * x; }

double x_threshold(double delta, double eta, double g_tilde) {
    if (delta < 0.0 || eta < 0.0) throw DomainError("x_threshold: negative input");
    if (!(g_tilde > 2.0 * delta))
        throw HypothesisError("x_threshold: g_tilde <= 2*delta (try a larger segment length)");
    return 2.0 * delta * (2.0 * eta + delta) / (g_tilde - 2.0 * delta);
}

double theorem2_bound(double g_bar, double delta, double eta, double g_tilde) {
    return knabe_bound(g_bar, x_threshold(delta, eta, g_tilde));
}

double lm_threshold(std::int64_t n) {
    return 4.0 * std::sqrt(6.0) * std::pow(static_cast<double>(n), -1.5);
}

std::int64_t lm_witness(double gap_HS, double c1, double norm_Hbar, LinkCount count,
                        std::int64_t cap) {
    if (!(gap_HS > 0.0) || !(c1 > 0.0) || norm_Hbar < 0.0)
        throw DomainError("lm_witness: inputs must be positive");
    auto qualifies = [&](std::int64_t n) {
        double links = (count == LinkCount::PerSegment) ? double(n) : double(n - 1);
        double lhs = gap_HS * c1 / (gap_HS + c1 + links * norm_Hbar);
        return lhs > lm_threshold(n);
    };
    // lhs * n^{3/2} is strictly increasing in n, so the qualifying set is an
    // upper ray and binary search applies.
    if (!qualifies(cap))
        throw WitnessNotFoundError("lm_witness: no witness below cap " + std::to_string(cap));
    std::int64_t lo = 1, hi = cap;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (qualifies(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace gapcert
