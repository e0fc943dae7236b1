#pragma once

#include <cstdint>
#include <optional>

#include "gapcert/operator.hpp"

namespace gapcert {

struct LanczosOptions {
    double tol = 1e-9;
    std::uint64_t seed = 42;
    int max_basis = 0;       // 0: max(3k+20, 40)
    int max_restarts = 600;
    // Orthonormal columns projected out of the search space exactly; the
    // solver then returns eigenpairs of the deflated operator.
    std::optional<Matrix> deflate;
};

// k smallest eigenvalues of a Hermitian operator via thick-restart Lanczos
// with full reorthogonalization and locking. Deterministic for a fixed seed.
// Residuals ||A v - lambda v|| are returned and bounded by tol*scale with
// scale = max(1, norm_bound). Throws ConvergenceError on failure.
Spectrum lowest_eigs(const HermitianOp& op, int k, const LanczosOptions& opts = {});

// Dense-or-iterative dispatch: dense full solve below the cap, Lanczos above.
Spectrum lowest_eigs_auto(const HermitianOp& op, int k, const SolveConfig& cfg,
                          std::optional<Matrix> deflate = std::nullopt);

} // namespace gapcert
