#pragma once

#include "gapcert/renorm.hpp"

namespace gapcert::teleport {

// Composite-spin chain: d = 9 (a pair of qutrits), qubit boundaries.
// Closed forms live at the composite level; exact-diagonalization checks run
// at the qutrit level through the index identity
//   composite index = 3 * (upper qutrit) + (lower qutrit),
// which makes the two labelings bit-identical under the site-0-rightmost
// convention.

struct Params {
    double theta = 0.0;
    int seg_len = 2;
    int ell = 6;
};

// Bell-pinning projector sum; dl/dr allow the qutrit-qubit boundary variants.
Matrix hb(int dl = 3, int dr = 3);
// Teleportation step penalty on two qutrits; spectrum {0 x4, 1 x5}.
Matrix hp(double theta);

// Two-composite-spin coupling (81x81) and the boundary couplings.
Matrix coupling(double theta);
Matrix coupling_first(double theta);  // composite x qubit (18x18)
Matrix coupling_last(double theta);   // qubit x composite (18x18)

ChainSpec spec(double theta);

// The 9x9 map M generating the segment ground states.
Matrix m_map(double theta);

struct Overlaps {
    double alpha;
    double beta;
};
// Prop-3 recursion values at power seg_len-1.
Overlaps overlaps(int seg_len, double theta);

// Unnormalized |psi_{a,b}> of a seg_len-composite-spin segment (dim 9^seg_len).
Vector psi_ab(int seg_len, double theta, int a, int b);

// Orthonormal four-state ground basis; columns dim 9^seg_len.
GroundSpace ground_basis(int seg_len, double theta);

// Normalization constants N0(l), N(l).
double norm_n0(int l, double theta);
double norm_n(int l, double theta);

// Exponentially decaying flank defect Delta(l); zero at theta = 0.
double delta_decay(int l, double theta);

// Scale of h_tilde: N(l)^4 cos^4(theta) (cos^2 + sin^2/4)^(2l-2).
double htilde_scale(int seg_len, double theta);

// The fixed 16x16 matrix in the paper's product-basis listing order
// (right segment major). Entries in {0, +-1/4, 3/4}; spectrum {0 x4, 1 x12}.
Matrix k_matrix();
// Same operator reindexed to the chain convention (left segment major).
Matrix k_matrix_chain();

// Closed-form renormalized coupling, chain convention (16x16).
RenormCoupling coupling_renorm(int seg_len, double theta);

// Closed-form commuting split per the tilde construction; delta is the exact
// 16x16 norm of k_bar, with the decay bound Delta(l)*||h_tilde|| checked.
CommutingSplit split(int seg_len, double theta);

int z_count();           // 4
double g_bar(int seg_len, double theta);
double g_tilde(int seg_len, double theta);

struct BoundaryForms {
    Matrix h0_bar, hl_bar;      // 16x16, flanked
    Matrix h0_tilde, hl_tilde;  // 16x16
    double c1_lower;            // (1 - Delta(l)/2) * ratio(l)
    double ratio;               // gap of h0_tilde + hl_tilde
};
BoundaryForms boundary_forms(int ell, double theta);

// Link bond restricted to Psi(l_left) x Psi(l_right); 16x16 chain convention.
Matrix remnant_coupling(int l_left, int l_right, double theta);
double remnant_c1_lower(int l_left, int l_right, double theta);

// Unique ground state of the full chain (dim 4 * 9^ell), for deflation.
Vector ground_state_vector(int ell, double theta);

} // namespace gapcert::teleport
