#include "gapcert/operator.hpp"

namespace gapcert {

namespace {

std::int64_t prod_dims(const std::vector<int>& dims, std::size_t lo, std::size_t hi) {
    std::int64_t p = 1;
    for (std::size_t i = lo; i < hi && i < dims.size(); ++i) p *= dims[i];
    return p;
}

} // namespace

template <class Scalar>
BasicHermitianOp<Scalar> BasicHermitianOp<Scalar>::dense(Mat m) {
    if (m.rows() != m.cols()) throw ShapeError("HermitianOp::dense: not square");
    if ((m - Mat(m.adjoint())).norm() > 1e-12 * std::max(1.0, m.norm()))
        throw SymmetryError("HermitianOp::dense: matrix not Hermitian");
    BasicHermitianOp op;
    op.dims_ = {static_cast<int>(m.rows())};
    op.dim_ = m.rows();
    op.dense_ = std::move(m);
    return op;
}

template <class Scalar>
BasicHermitianOp<Scalar> BasicHermitianOp<Scalar>::lazy(std::vector<int> dims,
                                                        std::vector<LocalTerm> terms) {
    BasicHermitianOp op;
    op.dim_ = prod_dims(dims, 0, dims.size());
    if (op.dim_ <= 0) throw ShapeError("HermitianOp::lazy: empty dims");
    for (const auto& t : terms) {
        if (t.site < 0 || t.site + 1 >= static_cast<int>(dims.size()))
            throw ShapeError("HermitianOp::lazy: term site out of range");
        std::int64_t m = std::int64_t(dims[t.site + 1]) * dims[t.site];
        if (t.block.rows() != m || t.block.cols() != m)
            throw ShapeError("HermitianOp::lazy: block dimension mismatch");
        if ((t.block - Mat(t.block.adjoint())).norm() >
            1e-12 * std::max(1.0, t.block.norm()))
            throw SymmetryError("HermitianOp::lazy: non-Hermitian block");
    }
    op.dims_ = std::move(dims);
    op.terms_ = std::move(terms);
    return op;
}

template <class Scalar>
BasicHermitianOp<Scalar> BasicHermitianOp<Scalar>::zero(std::vector<int> dims) {
    return lazy(std::move(dims), {});
}

template <class Scalar>
void BasicHermitianOp<Scalar>::apply(const Vec& x, Vec& y) const {
    if (x.size() != dim_) throw ShapeError("HermitianOp::apply: vector size mismatch");
    if (is_dense()) {
        y.noalias() = dense_ * x;
        return;
    }
    y.setZero(dim_);
    using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (const auto& t : terms_) {
        const std::int64_t m = std::int64_t(dims_[t.site + 1]) * dims_[t.site];
        const std::int64_t R = prod_dims(dims_, 0, t.site);
        const std::int64_t L = dim_ / (m * R);
        for (std::int64_t l = 0; l < L; ++l) {
            Eigen::Map<const RowMat> xs(x.data() + l * m * R, m, R);
            Eigen::Map<RowMat> ys(y.data() + l * m * R, m, R);
            ys.noalias() += t.block * xs;
        }
    }
}

template <class Scalar>
typename BasicHermitianOp<Scalar>::Vec BasicHermitianOp<Scalar>::apply(const Vec& x) const {
    Vec y;
    apply(x, y);
    return y;
}

template <class Scalar>
typename BasicHermitianOp<Scalar>::Mat BasicHermitianOp<Scalar>::densify(std::int64_t cap) const {
    if (dim_ > cap)
        throw SizeError("HermitianOp::densify: dim " + std::to_string(dim_) +
                        " exceeds cap " + std::to_string(cap));
    if (is_dense()) return dense_;
    Mat out = Mat::Zero(dim_, dim_);
    Vec e = Vec::Zero(dim_), col;
    for (std::int64_t j = 0; j < dim_; ++j) {
        e(j) = Scalar(1);
        apply(e, col);
        out.col(j) = col;
        e(j) = Scalar(0);
    }
    return out;
}

template <class Scalar>
double BasicHermitianOp<Scalar>::norm_bound() const {
    if (norm_bound_ >= 0.0) return norm_bound_;
    if (is_dense()) {
        norm_bound_ = opnorm(dense_);
    } else {
        double b = 0.0;
        for (const auto& t : terms_) b += opnorm(t.block);
        norm_bound_ = b;
    }
    return norm_bound_;
}

template <class Scalar>
BasicHermitianOp<Scalar>& BasicHermitianOp<Scalar>::operator+=(const BasicHermitianOp& other) {
    if (other.dim_ != dim_ || other.dims_ != dims_)
        throw ShapeError("HermitianOp::operator+=: dims mismatch");
    if (is_dense() || other.is_dense())
        throw ShapeError("HermitianOp::operator+=: lazy operators only");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    norm_bound_ = -1.0;
    return *this;
}

template <class Scalar>
BasicHermitianOp<Scalar> embed_local(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& block,
    int left_site, std::vector<int> dims) {
    using Op = BasicHermitianOp<Scalar>;
    typename Op::LocalTerm t{left_site, block};
    return Op::lazy(std::move(dims), {std::move(t)});
}

template class BasicHermitianOp<double>;
template class BasicHermitianOp<Complex>;
template HermitianOp embed_local<double>(const Matrix&, int, std::vector<int>);
template CHermitianOp embed_local<Complex>(const CMatrix&, int, std::vector<int>);

} // namespace gapcert
