#include "gapcert/teleport.hpp"

#include <cmath>

namespace gapcert::teleport {

namespace {

constexpr int IDLE = 2;

Vector basis_vec(int dim, int i) {
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

Vector vkron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// apply a two-site block on sites (site+1, site) of a product-space vector
void apply_site_block(const Matrix& block, int site, const std::vector<int>& dims,
                      Vector& v) {
    std::int64_t R = 1;
    for (int i = 0; i < site; ++i) R *= dims[i];
    const std::int64_t m = std::int64_t(dims[site + 1]) * dims[site];
    const std::int64_t L = v.size() / (m * R);
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Vector out = Vector::Zero(v.size());
    for (std::int64_t l = 0; l < L; ++l) {
        Eigen::Map<const RowMat> xs(v.data() + l * m * R, m, R);
        Eigen::Map<RowMat> ys(out.data() + l * m * R, m, R);
        ys.noalias() = block * xs;
    }
    v = std::move(out);
}

double q_of(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return c * c + 0.25 * s * s;
}
double r_of(double theta) {
    double s = std::sin(theta);
    return 0.25 * s * s;
}

// K in the paper's listing order, x4
constexpr int kK4[16][16] = {
    { 3, 0, 0, 0, 0,-1, 0, 0, 0, 0, 1, 0, 0, 0, 0,-1},
    { 0, 3, 0, 0,-1, 0, 0, 0, 0, 0, 0, 1, 0, 0,-1, 0},
    { 0, 0, 3, 0, 0, 0, 0, 1,-1, 0, 0, 0, 0,-1, 0, 0},
    { 0, 0, 0, 3, 0, 0, 1, 0, 0,-1, 0, 0,-1, 0, 0, 0},
    { 0,-1, 0, 0, 3, 0, 0, 0, 0, 0, 0, 1, 0, 0,-1, 0},
    {-1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0,-1},
    { 0, 0, 0, 1, 0, 0, 3, 0, 0, 1, 0, 0, 1, 0, 0, 0},
    { 0, 0, 1, 0, 0, 0, 0, 3, 1, 0, 0, 0, 0, 1, 0, 0},
    { 0, 0,-1, 0, 0, 0, 0, 1, 3, 0, 0, 0, 0,-1, 0, 0},
    { 0, 0, 0,-1, 0, 0, 1, 0, 0, 3, 0, 0,-1, 0, 0, 0},
    { 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 1},
    { 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 3, 0, 0, 1, 0},
    { 0, 0, 0,-1, 0, 0, 1, 0, 0,-1, 0, 0, 3, 0, 0, 0},
    { 0, 0,-1, 0, 0, 0, 0, 1,-1, 0, 0, 0, 0, 3, 0, 0},
    { 0,-1, 0, 0,-1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 3, 0},
    {-1, 0, 0, 0, 0,-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 3},
};

// boundary 8x8 blocks in the chain-consistent gauge, x4.
// h0 block indexes (Psi_z, qubit_0) pairs as 2z + q; the identity factor is
// the far qubit. hl block indexes (qubit_{l+1}, Psi_z) pairs as 4q + z.
constexpr int kB04[8][8] = {
    { 3, 0, 0,-1, 0, 1,-1, 0},
    { 0, 3,-1, 0,-1, 0, 0, 1},
    { 0,-1, 3, 0,-1, 0, 0, 1},
    {-1, 0, 0, 3, 0, 1,-1, 0},
    { 0,-1,-1, 0, 3, 0, 0, 1},
    { 1, 0, 0, 1, 0, 3, 1, 0},
    {-1, 0, 0,-1, 0, 1, 3, 0},
    { 0, 1, 1, 0, 1, 0, 0, 3},
};
constexpr int kBL4[8][8] = {
    { 3, 0, 0,-1, 0,-1,-1, 0},
    { 0, 3, 1, 0,-1, 0, 0, 1},
    { 0, 1, 3, 0, 1, 0, 0,-1},
    {-1, 0, 0, 3, 0,-1,-1, 0},
    { 0,-1, 1, 0, 3, 0, 0, 1},
    {-1, 0, 0,-1, 0, 3,-1, 0},
    {-1, 0, 0,-1, 0,-1, 3, 0},
    { 0, 1,-1, 0, 1, 0, 0, 3},
};

Matrix from_quarters(const int (&a)[8][8]) {
    Matrix m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m(i, j) = a[i][j] / 4.0;
    return m;
}

Matrix flank4(double depressed) {
    Vector d(4);
    d << depressed, 1.0, 1.0, 1.0;
    return Matrix(d.asDiagonal());
}

} // namespace

Matrix hb(int dl, int dr) {
    auto kk = [&](int a, int b) { return vkron(basis_vec(dl, a), basis_vec(dr, b)); };
    Vector v1 = kk(0, 1), v2 = kk(1, 0), v3 = (kk(0, 0) - kk(1, 1)) / std::sqrt(2.0);
    return v1 * v1.transpose() + v2 * v2.transpose() + v3 * v3.transpose();
}

Matrix hp(double theta) {
    auto kk = [&](int a, int b) { return vkron(basis_vec(3, a), basis_vec(3, b)); };
    Matrix h = Matrix::Zero(9, 9);
    for (int b = 0; b < 2; ++b) {
        Vector u = kk(IDLE, b), v = kk(b, IDLE);
        h += u * u.transpose() + v * v.transpose();
    }
    Vector bell = (kk(0, 0) + kk(1, 1)) / std::sqrt(2.0);
    Vector w = std::sin(theta) * bell - std::cos(theta) * kk(IDLE, IDLE);
    h += w * w.transpose();
    return h;
}

Matrix coupling(double theta) {
    Matrix I3 = Matrix::Identity(3, 3), I9 = Matrix::Identity(9, 9);
    return kron(kron(I3, hb()), I3) + kron(I9, 0.5 * hp(theta)) +
           kron(0.5 * hp(theta), I9);
}

Matrix coupling_first(double theta) {
    return kron(Matrix::Identity(3, 3), hb(3, 2)) +
           kron(0.5 * hp(theta), Matrix::Identity(2, 2));
}

Matrix coupling_last(double theta) {
    return kron(hb(2, 3), Matrix::Identity(3, 3)) +
           kron(Matrix::Identity(2, 2), 0.5 * hp(theta));
}

ChainSpec spec(double theta) {
    if (!(theta >= 0.0) || !(std::cos(theta) > 0.0))
        throw DomainError("teleport: theta must lie in [0, pi/2)");
    ChainSpec s;
    s.d = 9;
    s.d0 = 2;
    s.d_end = 2;
    s.Hbar = coupling(theta).cast<Complex>();
    s.H_first = coupling_first(theta).cast<Complex>();
    s.H_last = coupling_last(theta).cast<Complex>();
    s.theta = theta;
    return s;
}

Matrix m_map(double theta) {
    Matrix p01 = Matrix::Zero(3, 3);
    p01(0, 0) = p01(1, 1) = 1.0;
    Matrix m = std::cos(theta) * kron(p01, p01);
    for (int b = 0; b < 2; ++b) {
        Matrix lift = Matrix::Zero(3, 3);
        lift(IDLE, b) = 1.0;
        m += (std::sin(theta) / std::sqrt(2.0)) * kron(lift, lift);
    }
    return m;
}

Overlaps overlaps(int seg_len, double theta) {
    if (seg_len < 1) throw ArgumentError("teleport_overlaps: seg_len >= 1");
    double q = q_of(theta), r = r_of(theta);
    return {std::pow(q, seg_len - 1) - std::pow(r, seg_len - 1),
            std::pow(r, seg_len - 1)};
}

Vector psi_ab(int seg_len, double theta, int a, int b) {
    if (seg_len < 1) throw ArgumentError("psi_ab: seg_len >= 1");
    Vector bell = Vector::Zero(9);
    bell(0) = bell(4) = 1.0 / std::sqrt(2.0);  // (|00>+|11>)/sqrt(2), 3a+b index
    Vector state = basis_vec(3, b);
    for (int i = 0; i < seg_len - 1; ++i) state = vkron(state, bell);
    state = vkron(state, basis_vec(3, a));
    std::vector<int> dims(2 * seg_len, 3);
    Matrix m = m_map(theta);
    for (int i = 0; i + 1 < 2 * seg_len; i += 2) apply_site_block(m, i, dims, state);
    return state;
}

double norm_n0(int l, double theta) {
    double q = q_of(theta), r = r_of(theta);
    return 1.0 / std::sqrt(std::pow(q, l) + 3.0 * std::pow(r, l));
}

double norm_n(int l, double theta) {
    double q = q_of(theta), r = r_of(theta);
    return 1.0 / std::sqrt(std::pow(q, l) - std::pow(r, l));
}

GroundSpace ground_basis(int seg_len, double theta) {
    if (seg_len < 2) throw ArgumentError("teleport ground_basis: seg_len >= 2");
    if (!(std::cos(theta) > 0.0)) throw DomainError("teleport: cos(theta) must be > 0");
    Vector p00 = psi_ab(seg_len, theta, 0, 0), p01 = psi_ab(seg_len, theta, 0, 1);
    Vector p10 = psi_ab(seg_len, theta, 1, 0), p11 = psi_ab(seg_len, theta, 1, 1);
    double n0 = norm_n0(seg_len, theta), n = norm_n(seg_len, theta);
    const double rt2 = std::sqrt(2.0);
    Matrix cols(p00.size(), 4);
    cols.col(0) = n0 * (p00 + p11) / rt2;
    cols.col(1) = n * (p01 + p10) / rt2;
    cols.col(2) = n * (p01 - p10) / rt2;
    cols.col(3) = n * (p00 - p11) / rt2;
    GroundSpace gs;
    gs.basis.columns = std::move(cols);
    gs.basis.tol_used = 0.0;
    gs.seg_len = seg_len;
    gs.d_bar = 4;
    gs.closed_form = true;
    return gs;
}

double delta_decay(int l, double theta) {
    double q = q_of(theta), r = r_of(theta);
    double num = std::pow(q, l) - std::pow(r, l);
    double den = std::pow(q, l) + 3.0 * std::pow(r, l);
    return 4.0 * (1.0 - std::sqrt(num / den));
}

double htilde_scale(int seg_len, double theta) {
    double n = norm_n(seg_len, theta), c = std::cos(theta);
    return std::pow(n, 4) * std::pow(c, 4) * std::pow(q_of(theta), 2 * seg_len - 2);
}

Matrix k_matrix() {
    Matrix k(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) k(i, j) = kK4[i][j] / 4.0;
    return k;
}

Matrix k_matrix_chain() { return swap_kron_factors(k_matrix(), 4, 4); }

RenormCoupling coupling_renorm(int seg_len, double theta) {
    double sigma = htilde_scale(seg_len, theta);
    Matrix f = flank4(1.0 - delta_decay(seg_len, theta) / 4.0);
    Matrix flank = kron(f, f);
    Matrix h = flank * (sigma * k_matrix_chain()) * flank;
    return {0.5 * (h + h.transpose()), 4};
}

CommutingSplit split(int seg_len, double theta) {
    double sigma = htilde_scale(seg_len, theta);
    CommutingSplit s;
    s.h_tilde = sigma * k_matrix_chain();
    RenormCoupling rc = coupling_renorm(seg_len, theta);
    s.k_bar = rc.h_bar - s.h_tilde;
    s.delta_actual = opnorm(s.k_bar);
    s.delta = s.delta_actual;
    s.eta = sigma;  // ||K|| = 1
    s.strategy = SplitStrategy::Model;
    double bound = delta_decay(seg_len, theta) * sigma;
    if (s.delta_actual > bound + 1e-12)
        throw ModelInconsistencyError("teleport split: ||k_bar|| exceeds decay bound");
    s.comm_residual = split_comm_residual(s.h_tilde);
    s.comm_verified_numerically = true;
    if (s.comm_residual > 1e-10)
        throw ModelInconsistencyError("teleport split: commutator residual too large");
    return s;
}

int z_count() { return 4; }

double g_bar(int seg_len, double theta) {
    RenormCoupling rc = coupling_renorm(seg_len, theta);
    return coupling_gap(rc.h_bar, 1e-12);
}

double g_tilde(int seg_len, double theta) {
    // lambda_4 of h_tilde x I + I x h_tilde equals the h_tilde gap, which is
    // the scale itself since K has spectrum {0 x4, 1 x12}.
    return htilde_scale(seg_len, theta);
}

namespace {

double boundary_ratio(int ell, double theta) {
    double q = q_of(theta), r = r_of(theta), c = std::cos(theta);
    return c * c * std::pow(q, ell - 1) / (std::pow(q, ell) - std::pow(r, ell));
}

} // namespace

BoundaryForms boundary_forms(int ell, double theta) {
    if (ell < 1) throw ArgumentError("boundary_forms: ell >= 1");
    BoundaryForms out;
    out.ratio = boundary_ratio(ell, theta);
    Matrix I2 = Matrix::Identity(2, 2);
    out.h0_tilde = out.ratio * kron(I2, from_quarters(kB04));
    out.hl_tilde = out.ratio * kron(from_quarters(kBL4), I2);
    Matrix f = kron(kron(I2, flank4(1.0 - delta_decay(ell, theta) / 4.0)), I2);
    out.h0_bar = f * out.h0_tilde * f;
    out.hl_bar = f * out.hl_tilde * f;
    out.c1_lower = (1.0 - delta_decay(ell, theta) / 2.0) * out.ratio;
    return out;
}

Matrix remnant_coupling(int l_left, int l_right, double theta) {
    if (l_left < 2 || l_right < 2)
        throw ArgumentError("remnant_coupling: both lengths must be >= 2");
    double q = q_of(theta), c = std::cos(theta);
    double sigma = norm_n(l_left, theta) * norm_n(l_left, theta) *
                   norm_n(l_right, theta) * norm_n(l_right, theta) *
                   std::pow(c, 4) * std::pow(q, l_left + l_right - 2);
    Matrix fl = flank4(1.0 - delta_decay(l_left, theta) / 4.0);
    Matrix fr = flank4(1.0 - delta_decay(l_right, theta) / 4.0);
    Matrix flank = kron(fl, fr);
    Matrix h = flank * (sigma * k_matrix_chain()) * flank;
    return 0.5 * (h + h.transpose());
}

double remnant_c1_lower(int l_left, int l_right, double theta) {
    double q = q_of(theta), c = std::cos(theta);
    double sigma = norm_n(l_left, theta) * norm_n(l_left, theta) *
                   norm_n(l_right, theta) * norm_n(l_right, theta) *
                   std::pow(c, 4) * std::pow(q, l_left + l_right - 2);
    double d = 0.5 * (delta_decay(l_left, theta) + delta_decay(l_right, theta));
    return (1.0 - d) * sigma;
}

Vector ground_state_vector(int ell, double theta) {
    BoundaryForms bf = boundary_forms(ell, theta);
    Spectrum s = ordered_eigs(Matrix(bf.h0_bar + bf.hl_bar), true);
    Vector coef = s.vectors->col(0);  // kernel vector in (q_top, z, q_0) order
    GroundSpace gs = ground_basis(ell, theta);
    const auto& B = gs.basis.columns;
    Vector out = Vector::Zero(4 * B.rows());
    int i = 0;
    for (int qtop = 0; qtop < 2; ++qtop)
        for (int z = 0; z < 4; ++z)
            for (int q0 = 0; q0 < 2; ++q0, ++i) {
                if (coef(i) == 0.0) continue;
                Vector col = vkron(vkron(basis_vec(2, qtop), B.col(z)), basis_vec(2, q0));
                out += coef(i) * col;
            }
    return out / out.norm();
}

} // namespace gapcert::teleport
