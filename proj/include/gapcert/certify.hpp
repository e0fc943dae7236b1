#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/certificate.hpp"
#include "gapcert/renorm.hpp"

namespace gapcert {

struct CertifyOptions {
    double theta = 0.0;
    std::optional<int> seg_len;  // fixed segment length; otherwise retry schedule
    std::optional<int> ell;      // chain length; default 3 * seg_len
    double tol = 1e-9;
    double split_tol = 1e-10;
    std::uint64_t seed = 42;
    // dims above which numeric verification is skipped and closed forms are
    // trusted (they are themselves validated at small sizes by the test
    // suites and the paper-check command)
    std::int64_t verify_dim_cap = 1 << 20;
};

// Segment lengths tried when none is pinned. The grid extends well past the
// small sizes because near theta = pi/2 the decay bound only becomes useful
// for very long segments (closed forms keep every step cheap).
std::vector<int> retry_schedule(bool closed_form_model);

// Full certification pipeline for a registered model ("teleport", "swap").
GapCertificate certify(const std::string& model_id, const CertifyOptions& opts);

// Numeric pipeline for a user-supplied coupling, threshold split strategy.
GapCertificate certify_spec(const ChainSpec& spec, const CertifyOptions& opts);

struct CrosscheckRow {
    int ell = 0;
    std::int64_t dim = 0;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double gap = 0.0;
    double bound = 0.0;
    bool bound_ok = false;
    std::uint64_t seed = 0;
    std::string note;
};

// Exact full-chain gaps against the assembled bound at each size. Sizes whose
// dimension exceeds dim_cap are recorded as skipped.
std::vector<CrosscheckRow> crosscheck_exact(const std::string& model_id,
                                            const CertifyOptions& opts,
                                            const std::vector<int>& sizes,
                                            std::int64_t dim_cap = 5000000);

std::string crosscheck_csv(const std::vector<CrosscheckRow>& rows);

bool is_registered_model(const std::string& model_id);
ChainSpec model_spec(const std::string& model_id, double theta);

} // namespace gapcert
