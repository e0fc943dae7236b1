#include "gapcert/renorm.hpp"

namespace gapcert {

namespace {

// kron of two column vectors, left factor most significant
Vector vec_kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

int kernel_count_checked(const Vector& vals, double tol, const char* what) {
    double scale = std::max(1.0, std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1))));
    double cut = tol * scale;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) >= 0.1 * cut && vals(i) <= 10.0 * cut)
            throw DegeneracyAmbiguityError(std::string(what) + ": eigenvalue " +
                                               std::to_string(vals(i)) +
                                               " inside kernel ambiguity band",
                                           vals(i));
    int k = 0;
    while (k < vals.size() && vals(k) < cut) ++k;
    return k;
}

} // namespace

GroundSpace segment_ground_space(const ChainSpec& spec, int seg_len, double tol,
                                 const SolveConfig& cfg) {
    HermitianOp seg = build_segment(spec, seg_len);
    GroundSpace gs;
    gs.seg_len = seg_len;
    if (seg.dim() <= cfg.dense_cap) {
        gs.basis = null_basis(seg.densify(cfg.dense_cap), tol);
    } else {
        // iterative kernel extraction: enlarge k until an eigenvalue clears
        // the ambiguity band above the cut
        double scale = std::max(1.0, seg.norm_bound());
        double cut = tol * scale;
        int k = 8;
        for (;;) {
            LanczosOptions opts;
            opts.tol = std::min(1e-10, tol);
            opts.seed = cfg.seed;
            Spectrum s = lowest_eigs(seg, k, opts);
            int below = 0;
            while (below < k && s.values(below) < cut) ++below;
            if (below < k) {
                double next = s.values(below);
                if (next >= 0.1 * cut && next <= 10.0 * cut)
                    throw DegeneracyAmbiguityError(
                        "segment_ground_space: eigenvalue inside ambiguity band", next);
                SubspaceBasis b;
                b.columns = s.vectors->leftCols(below);
                b.tol_used = tol;
                gs.basis = std::move(b);
                break;
            }
            if (k >= seg.dim()) throw SizeError("segment_ground_space: no gap found");
            k = std::min<std::int64_t>(2 * k, seg.dim());
        }
    }
    gs.d_bar = gs.basis.count();
    return gs;
}

RenormCoupling renormalized_coupling(const ChainSpec& spec, const GroundSpace& gs) {
    const int lbar = gs.seg_len;
    const int dbar = gs.d_bar;
    std::vector<int> dims(2 * lbar, spec.d);
    HermitianOp link = embed_local(spec.real_Hbar(), lbar - 1, dims);
    const Matrix& B = gs.basis.columns;
    // columns of the product basis, left-major
    std::vector<Vector> cols;
    cols.reserve(std::size_t(dbar) * dbar);
    for (int i = 0; i < dbar; ++i)
        for (int j = 0; j < dbar; ++j) cols.push_back(vec_kron(B.col(i), B.col(j)));
    Matrix h(dbar * dbar, dbar * dbar);
    Vector w;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        link.apply(cols[c], w);
        for (std::size_t r = 0; r <= c; ++r) {
            double v = cols[r].dot(w);
            h(r, c) = v;
            h(c, r) = v;
        }
    }
    return {std::move(h), dbar};
}

HermitianOp renormalized_chain(const RenormCoupling& rc, int n_seg) {
    if (n_seg < 2) throw ArgumentError("renormalized_chain: n_seg must be >= 2");
    std::vector<int> dims(n_seg, rc.d_bar);
    std::vector<HermitianOp::LocalTerm> terms;
    for (int i = 0; i + 1 < n_seg; ++i) terms.push_back({i, rc.h_bar});
    return HermitianOp::lazy(std::move(dims), std::move(terms));
}

double split_comm_residual(const Matrix& h_tilde) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(h_tilde.rows()))));
    Matrix I = Matrix::Identity(d, d);
    Matrix A = kron(h_tilde, I);
    Matrix B = kron(I, h_tilde);
    return opnorm(Matrix(A * B - B * A));
}

CommutingSplit commuting_split_threshold(const RenormCoupling& rc, double eps, double tol) {
    Matrix ht = rc.h_bar.unaryExpr(
        [eps](double v) { return std::abs(v) < eps ? 0.0 : v; });
    ht = psd_clip(0.5 * (ht + ht.transpose()));
    CommutingSplit s;
    s.h_tilde = std::move(ht);
    s.k_bar = rc.h_bar - s.h_tilde;
    s.delta_actual = opnorm(s.k_bar);
    s.delta = s.delta_actual;
    s.eta = opnorm(s.h_tilde);
    s.comm_residual = split_comm_residual(s.h_tilde);
    s.comm_verified_numerically = true;
    s.strategy = SplitStrategy::Threshold;
    if (s.comm_residual > tol)
        throw SplitNotFoundError("commuting_split: threshold split residual " +
                                 std::to_string(s.comm_residual) + " exceeds tolerance");
    return s;
}

KernelZ kernel_z_and_gtilde(const RenormCoupling& rc, const CommutingSplit& split,
                            double tol) {
    const int d = rc.d_bar;
    Matrix I = Matrix::Identity(d, d);
    Matrix S = kron(rc.h_bar, I) + kron(I, rc.h_bar);
    Vector vals = eigvalsh(S);
    KernelZ out;
    out.z = kernel_count_checked(vals, tol, "kernel_z_and_gtilde");
    Matrix St = kron(split.h_tilde, I) + kron(I, split.h_tilde);
    Vector tvals = eigvalsh(St);
    out.g_tilde = tvals(out.z);
    return out;
}

double coupling_gap(const Matrix& h_bar, double tol) {
    Vector vals = eigvalsh(h_bar);
    int k = kernel_count_checked(vals, tol, "coupling_gap");
    if (k >= vals.size()) throw DomainError("coupling_gap: operator is zero");
    return vals(k);
}

} // namespace gapcert
