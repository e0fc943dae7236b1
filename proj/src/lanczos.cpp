#include "gapcert/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

namespace gapcert {

namespace {

// splitmix64-fed normal deviates; deterministic across platforms up to libm.
struct SeededNormals {
    std::uint64_t state;
    explicit SeededNormals(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0,1)
        return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }
    void fill_normal(Vector& v) {
        for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
            double u1 = uniform(), u2 = uniform();
            double r = std::sqrt(-2.0 * std::log(u1));
            v(i) = r * std::cos(2.0 * M_PI * u2);
            v(i + 1) = r * std::sin(2.0 * M_PI * u2);
        }
        if (v.size() % 2 == 1) {
            double u1 = uniform(), u2 = uniform();
            v(v.size() - 1) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
    }
};

} // namespace

Spectrum lowest_eigs(const HermitianOp& op, int k, const LanczosOptions& opts) {
    const std::int64_t n = op.dim();
    if (k < 1) throw ArgumentError("lowest_eigs: k must be >= 1");
    const int deflated = opts.deflate ? static_cast<int>(opts.deflate->cols()) : 0;
    if (k > n - deflated)
        throw ArgumentError("lowest_eigs: k exceeds effective dimension");

    const double scale = std::max(1.0, op.norm_bound());
    const double tol = opts.tol;
    int m = opts.max_basis > 0 ? opts.max_basis : std::max(3 * k + 20, 40);
    m = static_cast<int>(std::min<std::int64_t>(m, n - deflated));

    SeededNormals rng(opts.seed);
    const Matrix* D = opts.deflate ? &*opts.deflate : nullptr;

    std::vector<Vector> lockV;
    std::vector<double> lockW;

    Matrix V(n, m + 1);
    Matrix T = Matrix::Zero(m + 1, m + 1);
    Vector w(n), r(n), tmp(n);

    auto project = [&](Vector& v) {
        if (D) v.noalias() -= (*D) * (D->transpose() * v);
        for (const auto& u : lockV) v.noalias() -= u * u.dot(v);
    };
    auto fresh_random = [&](Vector& v) {
        rng.fill_normal(v);
        project(v);
    };

    int p = 0;  // kept Ritz vectors occupy V[:, 0..p)
    Vector theta, sigma;
    fresh_random(r);
    double best_resid = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < opts.max_restarts; ++restart) {
        double nr = r.norm();
        if (nr < 1e-12 * scale) {
            fresh_random(r);
            for (int i = 0; i < p; ++i) r.noalias() -= V.col(i) * V.col(i).dot(r);
            project(r);
            nr = r.norm();
            if (nr < 1e-14) break;  // searched space exhausted
        }
        V.col(p) = r / nr;
        T.setZero();
        for (int i = 0; i < p; ++i) {
            T(i, i) = theta(i);
            T(i, p) = sigma(i);
            T(p, i) = sigma(i);
        }
        int j = p;
        double beta = 0.0;
        while (j < m) {
            op.apply(V.col(j), w);
            project(w);
            T(j, j) = V.col(j).dot(w);
            for (int pass = 0; pass < 2; ++pass) {
                // full reorthogonalization
                Eigen::VectorXd coef = V.leftCols(j + 1).transpose() * w;
                w.noalias() -= V.leftCols(j + 1) * coef;
                if (D || !lockV.empty()) project(w);
            }
            beta = w.norm();
            T(j, j + 1) = beta;
            T(j + 1, j) = beta;
            ++j;
            if (beta < 1e-13 * scale) break;
            V.col(j) = w / beta;
        }
        const int msz = j;
        Eigen::SelfAdjointEigenSolver<Matrix> es(T.topLeftCorner(msz, msz));
        const Vector& ritz = es.eigenvalues();
        const Matrix& S = es.eigenvectors();

        int i = 0;
        int newly_locked = 0;
        while (i < msz && static_cast<int>(lockW.size()) < k) {
            double rest = std::abs(beta * S(msz - 1, i));
            best_resid = std::min(best_resid, rest);
            if (rest <= tol * scale) {
                Vector x = V.leftCols(msz) * S.col(i);
                project(x);
                double nx = x.norm();
                if (nx > 1e-8) {
                    x /= nx;
                    lockV.push_back(std::move(x));
                    lockW.push_back(ritz(i));
                    ++newly_locked;
                }
                ++i;
            } else {
                break;
            }
        }
        if (static_cast<int>(lockW.size()) >= k) break;
        if (newly_locked > 0) {
            // restart from a fresh vector so degenerate copies can surface
            p = 0;
            fresh_random(r);
            continue;
        }
        int keep = std::min(std::max(k - static_cast<int>(lockW.size()) + 8, 10),
                            std::max(msz - 1, 1));
        std::vector<int> idx;
        for (int q = i; q < msz && static_cast<int>(idx.size()) < keep; ++q) idx.push_back(q);
        if (idx.empty())
            for (int q = 0; q < std::min(keep, msz); ++q) idx.push_back(q);
        Matrix Y(n, idx.size());
        Vector sig(idx.size()), th(idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            Y.col(c) = V.leftCols(msz) * S.col(idx[c]);
            sig(c) = beta * S(msz - 1, idx[c]);
            th(c) = ritz(idx[c]);
        }
        for (Eigen::Index c = 0; c < Y.cols(); ++c) {
            Vector y = Y.col(c);
            project(y);
            for (Eigen::Index cc = 0; cc < c; ++cc) y.noalias() -= Y.col(cc) * Y.col(cc).dot(y);
            double ny = y.norm();
            Y.col(c) = y / std::max(ny, 1e-300);
        }
        p = static_cast<int>(Y.cols());
        V.leftCols(p) = Y;
        theta = th;
        sigma = sig;
        if (beta < 1e-13 * scale) {
            fresh_random(r);
            for (int q = 0; q < p; ++q) r.noalias() -= V.col(q) * V.col(q).dot(r);
            project(r);
            sigma.setZero();
        } else {
            r = V.col(msz) * beta;
        }
    }

    if (static_cast<int>(lockW.size()) < k)
        throw ConvergenceError("lowest_eigs: only " + std::to_string(lockW.size()) + "/" +
                                   std::to_string(k) + " eigenpairs converged",
                               best_resid);

    std::vector<int> order(lockW.size());
    for (std::size_t q = 0; q < order.size(); ++q) order[q] = static_cast<int>(q);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lockW[a] < lockW[b]; });

    Spectrum s;
    s.values.resize(k);
    Matrix vecs(n, k);
    s.residuals.resize(k);
    for (int q = 0; q < k; ++q) {
        s.values(q) = lockW[order[q]];
        vecs.col(q) = lockV[order[q]];
        op.apply(vecs.col(q), tmp);
        s.residuals(q) = (tmp - s.values(q) * vecs.col(q)).norm();
    }
    s.vectors = std::move(vecs);
    return s;
}

Spectrum lowest_eigs_auto(const HermitianOp& op, int k, const SolveConfig& cfg,
                          std::optional<Matrix> deflate) {
    if (op.dim() <= cfg.dense_cap && !deflate) {
        Spectrum full = ordered_eigs(op.densify(cfg.dense_cap), true);
        Spectrum s;
        s.values = full.values.head(k);
        s.vectors = full.vectors->leftCols(k);
        s.residuals = full.residuals.head(k);
        return s;
    }
    LanczosOptions opts;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.deflate = std::move(deflate);
    return lowest_eigs(op, k, opts);
}

} // namespace gapcert
