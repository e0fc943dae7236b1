#include "gapcert/swap_model.hpp"

#include <cmath>

namespace gapcert::swapchain {

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

Vector qutrit_string(const std::vector<int>& levels) {
    Vector v = Vector::Ones(1);
    for (int q : levels) v = vkron(v, basis_vec(3, q));
    return v;
}

// single-site |psi> = cos|0> + sin|IDLE>
Vector psi_site(double theta) {
    Vector v = Vector::Zero(3);
    v(0) = std::cos(theta);
    v(IDLE) = std::sin(theta);
    return v;
}

Vector history_closed(int len, int b, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    if (len == 1) return basis_vec(3, b);
    if (b == 0) {
        Vector st = basis_vec(3, 0);
        for (int i = 0; i < len - 1; ++i) st = vkron(st, psi_site(theta));
        return st;
    }
    Vector st = Vector::Zero(std::int64_t(std::pow(3.0, len)));
    for (int j = 0; j <= len - 2; ++j) {
        Vector term = basis_vec(3, 0);
        for (int i = 0; i < len - 2 - j; ++i) term = vkron(term, psi_site(theta));
        term = vkron(term, basis_vec(3, 1));
        for (int i = 0; i < j; ++i) term = vkron(term, basis_vec(3, IDLE));
        st += c * std::pow(s, j) * term;
    }
    Vector last = basis_vec(3, 1);
    for (int i = 0; i < len - 1; ++i) last = vkron(last, basis_vec(3, IDLE));
    st += std::pow(s, len - 1) * last;
    return st;
}

Vector history_recursive(int len, int b, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    Vector psi0(9), psi1(9);
    psi0.setZero();
    psi1.setZero();
    psi0(0 * 3 + 0) = c;
    psi0(0 * 3 + IDLE) = s;  // cos|00> + sin|0 IDLE>
    psi1(0 * 3 + 1) = c;
    psi1(1 * 3 + IDLE) = s;  // cos|01> + sin|1 IDLE>
    Vector st = basis_vec(3, b);
    for (int n = 2; n <= len; ++n) {
        const std::int64_t rest = st.size() / 3;
        Vector mu = st.segment(0, rest);          // top site |0> component
        Vector nu = st.segment(rest, rest);       // top site |1> component
        Vector out = Vector::Zero(st.size() * 3);
        // alpha |0>|mu> + beta |1>|nu>  ->  alpha |psi_0>|mu> + beta |psi_1>|nu>
        for (int t = 0; t < 9; ++t) {
            if (psi0(t) != 0.0) out.segment(std::int64_t(t) * rest, rest) += psi0(t) * mu;
            if (psi1(t) != 0.0) out.segment(std::int64_t(t) * rest, rest) += psi1(t) * nu;
        }
        st = std::move(out);
    }
    return st;
}

int gidx(int b, int j) { return 2 * j + b; }

} // namespace

Matrix coupling(double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    auto kk = [&](int a, int b) { return vkron(basis_vec(3, a), basis_vec(3, b)); };
    Matrix h = Matrix::Zero(9, 9);
    Vector v1 = s * kk(0, 0) - c * kk(0, IDLE);
    Vector v2 = s * kk(0, 1) - c * kk(1, IDLE);
    h += v1 * v1.transpose() + v2 * v2.transpose();
    h += kk(1, 0) * kk(1, 0).transpose() + kk(1, 1) * kk(1, 1).transpose();
    return h;
}

Matrix coupling_first(double theta) {
    Matrix pen = Matrix::Zero(3, 3);
    pen(1, 1) = 1.0;
    return kron(Matrix::Identity(3, 3), pen) + coupling(theta);
}

Matrix coupling_last(double theta) {
    Matrix pen = Matrix::Zero(3, 3);
    pen(IDLE, IDLE) = 1.0;
    return kron(pen, Matrix::Identity(3, 3)) + coupling(theta);
}

ChainSpec spec(double theta) {
    if (!(theta >= 0.0) || !(std::cos(theta) > 0.0))
        throw DomainError("swap: theta must lie in [0, pi/2)");
    ChainSpec s;
    s.d = 3;
    s.d0 = 3;
    s.d_end = 3;
    s.Hbar = coupling(theta).cast<Complex>();
    s.H_first = coupling_first(theta).cast<Complex>();
    s.H_last = coupling_last(theta).cast<Complex>();
    s.theta = theta;
    return s;
}

Vector history_state(int seg_len, int b, int j, double theta) {
    if (seg_len < 1 || j < 0 || j > seg_len - 1 || (b != 0 && b != 1))
        throw ArgumentError("history_state: bad arguments");
    const int core_len = seg_len - j;
    Vector core = history_closed(core_len, b, theta);
    Vector check = history_recursive(core_len, b, theta);
    if ((core - check).norm() > 1e-12 * std::max(1.0, core.norm()))
        throw ModelInconsistencyError("history_state: recursion disagrees with closed form");
    Vector st = Vector::Ones(1);
    for (int i = 0; i < j; ++i) st = vkron(st, basis_vec(3, IDLE));
    return vkron(st, core);
}

GroundSpace gamma_basis(int seg_len, double theta) {
    if (seg_len < 1) throw ArgumentError("gamma_basis: seg_len >= 1");
    const std::int64_t dim = std::int64_t(std::pow(3.0, seg_len));
    Matrix cols(dim, 2 * seg_len + 1);
    for (int j = 0; j < seg_len; ++j) {
        cols.col(gidx(0, j)) = history_state(seg_len, 0, j, theta);
        cols.col(gidx(1, j)) = history_state(seg_len, 1, j, theta);
    }
    cols.col(2 * seg_len) = qutrit_string(std::vector<int>(seg_len, IDLE));
    GroundSpace gs;
    gs.basis.columns = std::move(cols);
    gs.seg_len = seg_len;
    gs.d_bar = 2 * seg_len + 1;
    gs.closed_form = true;
    return gs;
}

Matrix v_matrix(int m, double theta) {
    if (m < 3) throw ArgumentError("v_matrix: m >= 3");
    const double s = std::sin(theta), t = std::tan(theta);
    Matrix v = Matrix::Identity(m, m);
    v(0, 0) = t * t;
    for (int j = 1; j <= m - 2; ++j) {
        v(0, j) = -std::pow(s, j);
        v(j, 0) = v(0, j);
    }
    v(0, m - 1) = -t * std::pow(s, m - 2);
    v(m - 1, 0) = v(0, m - 1);
    return v;
}

Matrix w_matrix(int n, double theta) {
    return v_matrix(n + 1, theta).topLeftCorner(n, n);
}

std::vector<double> v_spectrum(int m, double theta) {
    std::vector<double> out{0.0};
    for (int i = 0; i < m - 2; ++i) out.push_back(1.0);
    double c = std::cos(theta);
    out.push_back(1.0 / (c * c));
    return out;
}

std::vector<double> w_spectrum(int n, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    double disc = std::sqrt(1.0 - 4.0 * c * c * std::pow(s, 2 * n));
    std::vector<double> out{(1.0 - disc) / (2.0 * c * c)};
    for (int i = 0; i < n - 2; ++i) out.push_back(1.0);
    out.push_back((1.0 + disc) / (2.0 * c * c));
    return out;
}

Matrix q0_block(int seg_len, double theta) {
    const int n = 2 * seg_len + 1;
    const double s = std::sin(theta), c = std::cos(theta), t = std::tan(theta);
    Matrix q = Matrix::Zero(n, n);
    q(gidx(0, 0), gidx(0, 0)) = t * t;
    q(gidx(1, 0), gidx(1, 0)) = t * t;
    for (int j = 1; j < seg_len; ++j) {
        q(gidx(0, j), gidx(0, j)) = 1.0;
        q(gidx(1, j), gidx(1, j)) = 1.0;
    }
    q(n - 1, n - 1) = 1.0;
    for (int b = 0; b < 2; ++b)
        for (int j = 1; j < seg_len; ++j) {
            q(gidx(b, 0), gidx(b, j)) -= std::pow(s, j);
            q(gidx(b, j), gidx(b, 0)) -= std::pow(s, j);
        }
    q(gidx(0, 0), n - 1) -= t * std::pow(s, seg_len - 1);
    q(n - 1, gidx(0, 0)) -= t * std::pow(s, seg_len - 1);
    return c * c * q;
}

Matrix q1_block(int seg_len, double theta) {
    const int n = 2 * seg_len + 1;
    const double c2 = std::cos(theta) * std::cos(theta);
    Vector d = Vector::Constant(n, c2);
    d(gidx(0, 0)) = 1.0;
    d(gidx(1, 0)) = 1.0;
    return Matrix(d.asDiagonal());
}

Matrix r_block(int seg_len, int b, double theta) {
    const int n = 2 * seg_len + 1;
    const double s = std::sin(theta), t = std::tan(theta);
    Matrix r = Matrix::Zero(n, n);
    r(gidx(b, 0), gidx(b, 0)) = t * t;
    for (int j = 1; j <= seg_len - 2; ++j) {
        r(gidx(b, j), gidx(b, j)) = 1.0;
        r(gidx(b, 0), gidx(b, j)) -= std::pow(s, j);
        r(gidx(b, j), gidx(b, 0)) -= std::pow(s, j);
    }
    return r;
}

Matrix r_idle_block(int seg_len, double theta) {
    (void)theta;
    const int n = 2 * seg_len + 1;
    Matrix r = Matrix::Zero(n, n);
    r(gidx(0, seg_len - 1), gidx(0, seg_len - 1)) = 1.0;
    r(gidx(1, seg_len - 1), gidx(1, seg_len - 1)) = 1.0;
    r(n - 1, n - 1) = 1.0;
    return r;
}

RenormCoupling coupling_renorm(int seg_len, double theta) {
    if (seg_len < 2) throw ArgumentError("swap coupling_renorm: seg_len >= 2");
    const int n = 2 * seg_len + 1;
    const double s = std::sin(theta), c = std::cos(theta);
    Matrix q0 = q0_block(seg_len, theta), q1 = q1_block(seg_len, theta);
    Matrix h = Matrix::Zero(n * n, n * n);
    for (int j = 0; j < seg_len; ++j) {
        const double a = (j <= seg_len - 2) ? c * c : 1.0;
        const int L0 = gidx(0, j), L1 = gidx(1, j);
        h.block(L0 * n, L0 * n, n, n) += a * q0;
        h.block(L1 * n, L1 * n, n, n) += a * q1;
        const double v = a * (-c * std::pow(s, seg_len));
        h(L0 * n + gidx(1, 0), L1 * n + (n - 1)) += v;
        h(L1 * n + (n - 1), L0 * n + gidx(1, 0)) += v;
    }
    return {std::move(h), n};
}

CommutingSplit split(int seg_len, double theta, bool materialize) {
    const int n = 2 * seg_len + 1;
    const double c = std::cos(theta);
    CommutingSplit s;
    s.strategy = SplitStrategy::Model;
    s.delta = delta_bound(seg_len, theta);
    s.delta_actual = delta_actual_closed(seg_len, theta);
    s.eta = 1.0;  // Q1's undamped projector entries
    s.comm_residual = 0.0;
    if (materialize) {
        Matrix q0t = q0_block(seg_len, theta), q1 = q1_block(seg_len, theta);
        // drop the j = seg_len-1 transition and the IDLE transition
        const double sj = std::pow(std::sin(theta), seg_len - 1);
        for (int b = 0; b < 2; ++b) {
            q0t(gidx(b, 0), gidx(b, seg_len - 1)) += c * c * sj;
            q0t(gidx(b, seg_len - 1), gidx(b, 0)) += c * c * sj;
        }
        q0t(gidx(0, 0), n - 1) += c * c * std::tan(theta) * sj;
        q0t(n - 1, gidx(0, 0)) += c * c * std::tan(theta) * sj;
        Matrix ht = Matrix::Zero(n * n, n * n);
        for (int j = 0; j < seg_len; ++j) {
            const double a = (j <= seg_len - 2) ? c * c : 1.0;
            ht.block(gidx(0, j) * n, gidx(0, j) * n, n, n) += a * q0t;
            ht.block(gidx(1, j) * n, gidx(1, j) * n, n, n) += a * q1;
        }
        RenormCoupling rc = coupling_renorm(seg_len, theta);
        s.h_tilde = std::move(ht);
        s.k_bar = rc.h_bar - s.h_tilde;
        double actual = opnorm(s.k_bar);
        if (actual > s.delta + 1e-12)
            throw ModelInconsistencyError("swap split: ||k_bar|| exceeds Lemma-7 bound");
        s.delta_actual = actual;
        s.comm_residual = split_comm_residual(s.h_tilde);
        s.comm_verified_numerically = true;
        if (s.comm_residual > 1e-10)
            throw ModelInconsistencyError("swap split: commutator residual too large");
    }
    return s;
}

int z_count(int seg_len) { return 6 * seg_len + 1; }

double g_bar(double theta) { return std::pow(std::cos(theta), 4); }
double g_tilde(double theta) { return std::pow(std::cos(theta), 4); }

double delta_bound(int seg_len, double theta) {
    return 2.0 * std::cos(theta) * std::pow(std::sin(theta), seg_len - 1);
}

double delta_actual_closed(int seg_len, double theta) {
    return std::cos(theta) * std::pow(std::sin(theta), seg_len - 1);
}

std::vector<BoundaryCase> boundary_cases(int ell, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    // The j = ell+1 history state IDLE^(ell+1)|1> sits entirely on the |1>
    // boundary level, so its penalty is 1 rather than cos^2.
    return {
        {0.0, 1, "Psi_0(ell+2;0)"},
        {c2, 1, "Psi_1(ell+2;0)"},
        {1.0, ell + 2, "Psi_0(ell+2;j), j=1..ell+1, and IDLE^(ell+2)"},
        {c2 + 1.0, ell, "Psi_1(ell+2;j), j=1..ell"},
        {2.0, 1, "Psi_1(ell+2;ell+1)"},
    };
}

Vector boundary_diagonal(int ell, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const int len = ell + 2;
    Vector d(2 * len + 1);
    for (int j = 0; j < len; ++j) {
        if (j == 0) {
            d(gidx(0, 0)) = 0.0;
            d(gidx(1, 0)) = c2;
        } else if (j <= ell) {
            d(gidx(0, j)) = 1.0;
            d(gidx(1, j)) = 1.0 + c2;
        } else {
            d(gidx(0, j)) = 1.0;
            d(gidx(1, j)) = 2.0;
        }
    }
    d(2 * len) = 1.0;
    return d;
}

double boundary_c1(double theta) { return std::cos(theta) * std::cos(theta); }
double remnant_c1(double theta) { return std::pow(std::cos(theta), 4); }

Vector ground_state_vector(int ell, double theta) {
    return history_state(ell + 2, 0, 0, theta);
}

} // namespace gapcert::swapchain
