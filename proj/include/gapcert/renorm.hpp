#pragma once

#include <functional>
#include <string>

#include "gapcert/bounds.hpp"
#include "gapcert/chain.hpp"

namespace gapcert {

// Orthonormal basis of a segment's zero-energy eigenspace.
struct GroundSpace {
    SubspaceBasis basis;
    int seg_len = 0;
    int d_bar = 0;
    bool closed_form = false;  // supplied by a registered model
};

// The link bond restricted to the product of two segment ground spaces,
// as a d_bar^2 square matrix. Product index = d_bar * z_left + z_right
// (the right segment is the less significant factor, like site 0).
struct RenormCoupling {
    Matrix h_bar;
    int d_bar = 0;
};

enum class SplitStrategy { Model, Threshold };

// Decomposition h_bar = h_tilde + k_bar with h_tilde PSD and neighboring
// h_tilde terms commuting. delta is the certified upper bound on ||k_bar||_2
// used in the gap formulas; delta_actual the recomputed operator norm.
struct CommutingSplit {
    Matrix h_tilde;
    Matrix k_bar;
    double delta = 0.0;
    double delta_actual = 0.0;
    double eta = 0.0;  // >= ||h_tilde||_2
    double comm_residual = 0.0;
    bool comm_verified_numerically = false;
    SplitStrategy strategy = SplitStrategy::Threshold;
};

// Numeric route: kernel of the segment Hamiltonian via dense or iterative
// solve. Models register closed-form bases through the certifier instead.
GroundSpace segment_ground_space(const ChainSpec& spec, int seg_len, double tol,
                                 const SolveConfig& cfg = SolveConfig::defaults());

// h_bar = (P x P) (I x Hbar x I) (P x P) evaluated matrix-free on basis pairs.
RenormCoupling renormalized_coupling(const ChainSpec& spec, const GroundSpace& gs);

// n_seg-site chain of d_bar-dimensional effective spins with bond h_bar.
HermitianOp renormalized_chain(const RenormCoupling& rc, int n_seg);

// Threshold strategy: zero entries below eps, re-symmetrize, PSD-clip.
// Fails (SplitNotFoundError) when the commutator residual exceeds tol.
CommutingSplit commuting_split_threshold(const RenormCoupling& rc, double eps, double tol);

// ||[h_tilde x I, I x h_tilde]||_2 in the d_bar^3 product space.
double split_comm_residual(const Matrix& h_tilde);

struct KernelZ {
    int z = 0;
    double g_tilde = 0.0;
};

// z = dim ker(h_bar x I + I x h_bar) counted with the null-space tolerance,
// g_tilde = lambda_z(h_tilde x I + I x h_tilde). Dense in d_bar^3.
KernelZ kernel_z_and_gtilde(const RenormCoupling& rc, const CommutingSplit& split,
                            double tol);

// Gap of h_bar above its kernel (lambda_k for k = kernel count).
double coupling_gap(const Matrix& h_bar, double tol);

} // namespace gapcert
