#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "gapcert/errors.hpp"

namespace gapcert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Ordered eigensystem of a Hermitian matrix. Eigenvalues ascending.
struct Spectrum {
    Vector values;
    std::optional<Matrix> vectors;    // real-symmetric input
    std::optional<CMatrix> cvectors;  // complex-Hermitian input
    Vector residuals;

    double lambda(int i) const { return values(i); }
    int count_below(double cut) const {
        int n = 0;
        while (n < values.size() && values(n) < cut) ++n;
        return n;
    }
};

// Orthonormal columns spanning a subspace of a `ambient_dim`-dimensional space.
template <class Scalar>
struct BasicSubspaceBasis {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> columns;
    double tol_used = 0.0;
    std::int64_t ambient_dim() const { return columns.rows(); }
    int count() const { return static_cast<int>(columns.cols()); }
};
using SubspaceBasis = BasicSubspaceBasis<double>;
using CSubspaceBasis = BasicSubspaceBasis<Complex>;

Matrix kron(const Matrix& a, const Matrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Largest singular value.
double opnorm(const Matrix& m);
double opnorm(const CMatrix& m);

// Relative symmetry defect ||A - A^dagger|| / max(1, ||A||), Frobenius.
double hermiticity_defect(const Matrix& m);
double hermiticity_defect(const CMatrix& m);

// Full spectrum of a Hermitian matrix, ascending, with residual check.
// Throws SymmetryError when the input is not Hermitian to 1e-12 relative.
Spectrum ordered_eigs(const Matrix& m, bool want_vectors = true);
Spectrum ordered_eigs(const CMatrix& m, bool want_vectors = true);

// Eigenvalues only (ascending); cheaper for large dense matrices.
Vector eigvalsh(const Matrix& m);
Vector eigvalsh(const CMatrix& m);

// Orthonormal basis of the span of eigenvectors with eigenvalue below
// tol*scale, scale = max(1, ||m||_2). Throws DegeneracyAmbiguityError when
// some eigenvalue lies in [0.1 tol scale, 10 tol scale].
SubspaceBasis null_basis(const Matrix& m, double tol);
CSubspaceBasis null_basis(const CMatrix& m, double tol);

// B^dagger M B for orthonormal columns B.
Matrix restrict_to(const Matrix& m, const SubspaceBasis& basis);
CMatrix restrict_to(const CMatrix& m, const CSubspaceBasis& basis);

// Spectral norm of (I - B B^dagger) A for orthonormal column sets of equal
// shape; the sine of the largest principal angle between the spans.
double subspace_sine(const Matrix& a, const Matrix& b);

// Reindex a bipartite operator: e_{d2*i+j} -> e_{d1*j+i}.
Matrix swap_kron_factors(const Matrix& m, int d1, int d2);

// PSD projection: clip negative eigenvalues at zero (symmetrizes first).
Matrix psd_clip(const Matrix& m);

} // namespace gapcert
