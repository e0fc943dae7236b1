#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gapcert {

// One application of the A = B + C gap bound in the assembly chain.
struct AbcStage {
    std::string name;     // "theorem1", "remnant", "boundary"
    bool applied = false;
    double gap_B = 0.0;
    double c1 = 0.0;
    double norm_C = 0.0;
    double bound = 0.0;
    std::string note;
};

// Machine-checkable record of a certification run. Serialization is
// deterministic: identical inputs and seeds give byte-identical JSON.
struct GapCertificate {
    int schema_version = 1;
    std::string model;
    double theta = 0.0;
    int ell = 0;
    int seg_len = 0;
    int remnant = 0;
    int d_bar = 0;
    int z = 0;

    double g_bar = 0.0;
    double g_tilde = 0.0;
    double delta = 0.0;         // value used in the bound formulas
    double delta_actual = 0.0;  // recomputed ||k_bar||_2 where materialized
    double eta = 0.0;
    double x_threshold = 0.0;
    double theorem2_bound = 0.0;

    double gap_hs = 0.0;
    int gap_hs_seg_len = 0;  // representative segment length actually solved
    std::int64_t lm_witness = 0;
    std::string lm_link_count = "n_seg_minus_1";

    std::vector<AbcStage> stages;
    double final_bound = 0.0;

    std::string verdict = "inconclusive";  // or "certified_gapped"
    std::string failure_stage;

    double tol = 1e-9;
    double split_tol = 1e-10;
    std::uint64_t seed = 42;
    std::vector<int> schedule_tried;
    bool verified_numerically = false;
    std::vector<std::string> notes;

    std::string to_json() const;
    void save(const std::string& path) const;
};

// 17-significant-digit decimal string for a double; used for every scalar in
// certificate JSON so that serialization is reproducible bit-for-bit.
std::string format_scalar(double v);

} // namespace gapcert
