#include "gapcert/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace gapcert {

namespace {

template <class Mat>
Mat kron_impl(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <class Mat>
double opnorm_impl(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

template <class Mat>
double defect_impl(const Mat& m) {
    double nrm = m.norm();
    return (m - m.adjoint()).norm() / std::max(1.0, nrm);
}

template <class Mat>
void require_hermitian(const Mat& m) {
    if (m.rows() != m.cols())
        throw ShapeError("ordered_eigs: matrix not square");
    if (defect_impl(m) > 1e-12)
        throw SymmetryError("ordered_eigs: input not Hermitian beyond tolerance");
}

} // namespace

Matrix kron(const Matrix& a, const Matrix& b) { return kron_impl(a, b); }
CMatrix kron(const CMatrix& a, const CMatrix& b) { return kron_impl(a, b); }

double opnorm(const Matrix& m) { return opnorm_impl(m); }
double opnorm(const CMatrix& m) { return opnorm_impl(m); }

double hermiticity_defect(const Matrix& m) { return defect_impl(m); }
double hermiticity_defect(const CMatrix& m) { return defect_impl(m); }

Spectrum ordered_eigs(const Matrix& m, bool want_vectors) {
    require_hermitian(m);
    Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        sym, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    Spectrum s;
    s.values = es.eigenvalues();
    if (want_vectors) {
        s.vectors = es.eigenvectors();
        s.residuals = (sym * (*s.vectors) - (*s.vectors) * s.values.asDiagonal())
                          .colwise()
                          .norm();
    } else {
        s.residuals = Vector::Zero(s.values.size());
    }
    return s;
}

Spectrum ordered_eigs(const CMatrix& m, bool want_vectors) {
    require_hermitian(m);
    CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(
        herm, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    Spectrum s;
    s.values = es.eigenvalues();
    if (want_vectors) {
        s.cvectors = es.eigenvectors();
        s.residuals = (herm * (*s.cvectors) - (*s.cvectors) * s.values.asDiagonal())
                          .colwise()
                          .norm();
    } else {
        s.residuals = Vector::Zero(s.values.size());
    }
    return s;
}

Vector eigvalsh(const Matrix& m) { return ordered_eigs(m, false).values; }
Vector eigvalsh(const CMatrix& m) { return ordered_eigs(m, false).values; }

namespace {

template <class Mat, class Basis>
Basis null_basis_impl(const Mat& m, double tol) {
    auto spec = ordered_eigs(m, true);
    double scale = std::max(1.0, std::max(std::abs(spec.values(0)),
                                          std::abs(spec.values(spec.values.size() - 1))));
    double cut = tol * scale;
    for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
        double lam = spec.values(i);
        if (lam >= 0.1 * cut && lam <= 10.0 * cut)
            throw DegeneracyAmbiguityError(
                "null_basis: eigenvalue " + std::to_string(lam) +
                    " inside ambiguity band around tol*scale = " + std::to_string(cut),
                lam);
    }
    int k = spec.count_below(cut);
    Basis b;
    if constexpr (std::is_same_v<Mat, Matrix>)
        b.columns = spec.vectors->leftCols(k);
    else
        b.columns = spec.cvectors->leftCols(k);
    b.tol_used = tol;
    return b;
}

} // namespace

SubspaceBasis null_basis(const Matrix& m, double tol) {
    return null_basis_impl<Matrix, SubspaceBasis>(m, tol);
}
CSubspaceBasis null_basis(const CMatrix& m, double tol) {
    return null_basis_impl<CMatrix, CSubspaceBasis>(m, tol);
}

Matrix restrict_to(const Matrix& m, const SubspaceBasis& basis) {
    if (m.rows() != basis.ambient_dim())
        throw ShapeError("restrict_to: ambient dimension mismatch");
    Matrix r = basis.columns.transpose() * m * basis.columns;
    return 0.5 * (r + r.transpose());
}

CMatrix restrict_to(const CMatrix& m, const CSubspaceBasis& basis) {
    if (m.rows() != basis.ambient_dim())
        throw ShapeError("restrict_to: ambient dimension mismatch");
    CMatrix r = basis.columns.adjoint() * m * basis.columns;
    return 0.5 * (r + CMatrix(r.adjoint()));
}

double subspace_sine(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("subspace_sine: shape mismatch");
    Matrix resid = a - b * (b.transpose() * a);
    return opnorm(resid);
}

Matrix swap_kron_factors(const Matrix& m, int d1, int d2) {
    const int n = d1 * d2;
    if (m.rows() != n || m.cols() != n)
        throw ShapeError("swap_kron_factors: dimension mismatch");
    Matrix out(n, n);
    auto flip = [&](int idx) {
        int i = idx / d2, j = idx % d2;
        return j * d1 + i;
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out(flip(r), flip(c)) = m(r, c);
    return out;
}

Matrix psd_clip(const Matrix& m) {
    Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Vector vals = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace gapcert
