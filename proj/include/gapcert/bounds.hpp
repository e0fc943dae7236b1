#pragma once

#include <cstdint>

#include "gapcert/errors.hpp"

namespace gapcert {

// Gap bound for A = B + C with C >= 0, c0 = 0 (caller-verified):
//   gap(A) >= gap_B * c1 / (gap_B + c1 + norm_C).
double abc_bound(double gap_B, double c1, double norm_C);

// Local-gap step: gap(h) >= g_bar - 2x once the anticommutator condition
// holds at x. May be negative (inconclusive).
double knabe_bound(double g_bar, double x);

// Smallest admissible x: 2 Delta (2 eta + Delta) / (g_tilde - 2 Delta).
// Requires g_tilde > 2 Delta.
double x_threshold(double delta, double eta, double g_tilde);

// g_bar - 2 * x_threshold; positive value certifies the renormalized chain.
double theorem2_bound(double g_bar, double delta, double eta, double g_tilde);

enum class LinkCount {
    PerSegment,      // ||H^L|| <= n * ||Hbar||
    SegmentsMinusOne // ||H^L|| <= (n-1) * ||Hbar|| (the count of link bonds)
};

// Smallest n with gap_HS*c1/(gap_HS + c1 + count(n)*norm_Hbar) > 4 sqrt(6) n^{-3/2}.
// Throws WitnessNotFoundError when no n below the cap qualifies.
std::int64_t lm_witness(double gap_HS, double c1, double norm_Hbar,
                        LinkCount count = LinkCount::PerSegment,
                        std::int64_t cap = 1000000000);

// The Lemm-Mozgunov threshold 4 sqrt(6) n^{-3/2}.
double lm_threshold(std::int64_t n);

} // namespace gapcert
