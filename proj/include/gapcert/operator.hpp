#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "gapcert/config.hpp"
#include "gapcert/linalg.hpp"

namespace gapcert {

// Hermitian operator on a tensor-product space, stored either densely or as a
// lazy sum of two-site blocks applied via matrix-vector products. Site 0 is
// the least-significant (rightmost) tensor factor:
//   state_index = sum_i s_i * prod_{j<i} d_j.
template <class Scalar>
class BasicHermitianOp {
public:
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    // A two-site block acting on sites (site+1, site), site+1 more significant.
    struct LocalTerm {
        int site;
        Mat block;
    };

    BasicHermitianOp() = default;

    static BasicHermitianOp dense(Mat m);
    static BasicHermitianOp lazy(std::vector<int> dims, std::vector<LocalTerm> terms);
    // Zero operator on the given dims.
    static BasicHermitianOp zero(std::vector<int> dims);

    std::int64_t dim() const { return dim_; }
    const std::vector<int>& dims() const { return dims_; }
    bool is_dense() const { return dense_.size() > 0; }
    const std::vector<LocalTerm>& terms() const { return terms_; }

    void apply(const Vec& x, Vec& y) const;  // y = A x
    Vec apply(const Vec& x) const;

    // Materializes the operator; throws SizeError above the cap.
    Mat densify(std::int64_t cap = SolveConfig::defaults().dense_cap) const;

    // Upper bound on ||A||_2 (sum of term norms; exact for dense storage).
    double norm_bound() const;

    // In-place sum with another operator on the same dims.
    BasicHermitianOp& operator+=(const BasicHermitianOp& other);

private:
    std::vector<int> dims_;
    std::int64_t dim_ = 0;
    std::vector<LocalTerm> terms_;
    Mat dense_;
    mutable double norm_bound_ = -1.0;
};

using HermitianOp = BasicHermitianOp<double>;
using CHermitianOp = BasicHermitianOp<Complex>;

// I x ... x block x ... x I with block on sites (left_site+1, left_site).
// block must be dims[left_site+1]*dims[left_site] square.
template <class Scalar>
BasicHermitianOp<Scalar> embed_local(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& block,
    int left_site, std::vector<int> dims);

extern template class BasicHermitianOp<double>;
extern template class BasicHermitianOp<Complex>;
extern template HermitianOp embed_local<double>(const Matrix&, int, std::vector<int>);
extern template CHermitianOp embed_local<Complex>(const CMatrix&, int, std::vector<int>);

} // namespace gapcert
