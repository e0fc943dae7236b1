#pragma once

#include <vector>

#include "gapcert/renorm.hpp"

namespace gapcert::swapchain {

// Qutrit chain (d = d0 = dEnd = 3) emulating a qubit swapped down a line.

Matrix coupling(double theta);        // 9x9 projector, spectrum {0 x5, 1 x4}
Matrix coupling_first(double theta);  // I x |1><1| + coupling
Matrix coupling_last(double theta);   // |IDLE><IDLE| x I + coupling

ChainSpec spec(double theta);

// History states |Psi_b(seg_len; j)> as dim-3^seg_len vectors. Built by the
// defining recursion and checked against the closed forms; disagreement is a
// model-inconsistency error.
Vector history_state(int seg_len, int b, int j, double theta);

// Orthonormal ground basis Gamma of a segment, 2*seg_len+1 columns ordered
// [Psi_0(0), Psi_1(0), Psi_0(1), Psi_1(1), ..., IDLE^seg_len].
GroundSpace gamma_basis(int seg_len, double theta);

// The m x m arrow matrix V(m) and W(n) = V(n+1) minus its last row/column.
Matrix v_matrix(int m, double theta);
Matrix w_matrix(int n, double theta);
std::vector<double> v_spectrum(int m, double theta);  // {0, 1 x(m-2), sec^2}
std::vector<double> w_spectrum(int n, double theta);

// Closed-form block operators in the Gamma basis (dim 2*seg_len+1).
Matrix q0_block(int seg_len, double theta);
Matrix q1_block(int seg_len, double theta);
Matrix r_block(int seg_len, int b, double theta);     // R_0 / R_1
Matrix r_idle_block(int seg_len, double theta);

// Closed-form renormalized coupling on Gamma x Gamma (left segment major).
RenormCoupling coupling_renorm(int seg_len, double theta);

// Lemma-7 split: neighboring h_tilde terms commute exactly; delta is the
// proven bound 2 cos(theta) sin^(seg_len-1)(theta).
CommutingSplit split(int seg_len, double theta, bool materialize = true);

int z_count(int seg_len);                   // 6*seg_len + 1
double g_bar(double theta);                 // cos^4(theta)
double g_tilde(double theta);               // cos^4(theta)
double delta_bound(int seg_len, double theta);
double delta_actual_closed(int seg_len, double theta);  // cos sin^(l-1)

// Boundary restriction of the two boundary projectors to Gamma_{ell+2}: the
// matrix is diagonal; eigenvalue cases with multiplicities and c1 = cos^2.
struct BoundaryCase {
    double value;
    int multiplicity;
    const char* states;
};
std::vector<BoundaryCase> boundary_cases(int ell, double theta);
Vector boundary_diagonal(int ell, double theta);  // in Gamma order
double boundary_c1(double theta);                 // cos^2(theta)
double remnant_c1(double theta);                  // cos^4(theta)

// Unique full-chain ground state |0> psi^(ell+1) over ell+2 sites.
Vector ground_state_vector(int ell, double theta);

} // namespace gapcert::swapchain
