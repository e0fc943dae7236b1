#include "gapcert/certificate.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "gapcert/errors.hpp"

namespace gapcert {

using ordered_json = nlohmann::ordered_json;

std::string format_scalar(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

ordered_json stage_json(const AbcStage& s) {
    ordered_json j;
    j["name"] = s.name;
    j["applied"] = s.applied;
    if (s.applied) {
        j["gapB"] = format_scalar(s.gap_B);
        j["c1"] = format_scalar(s.c1);
        j["normC"] = format_scalar(s.norm_C);
        j["bound"] = format_scalar(s.bound);
    }
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

} // namespace

std::string GapCertificate::to_json() const {
    ordered_json j;
    j["schemaVersion"] = schema_version;
    j["model"] = model;
    j["theta"] = format_scalar(theta);
    j["ell"] = ell;
    j["segLen"] = seg_len;
    j["remnant"] = remnant;
    j["dBar"] = d_bar;
    j["z"] = z;
    j["gBar"] = format_scalar(g_bar);
    j["gTilde"] = format_scalar(g_tilde);
    j["delta"] = format_scalar(delta);
    j["deltaActual"] = format_scalar(delta_actual);
    j["eta"] = format_scalar(eta);
    j["xThreshold"] = format_scalar(x_threshold);
    j["theorem2Bound"] = format_scalar(theorem2_bound);
    j["gapHS"] = format_scalar(gap_hs);
    j["gapHSSegLen"] = gap_hs_seg_len;
    j["lmWitness"] = lm_witness;
    j["lmLinkCount"] = lm_link_count;
    j["stages"] = ordered_json::array();
    for (const auto& s : stages) j["stages"].push_back(stage_json(s));
    j["finalBound"] = format_scalar(final_bound);
    j["verdict"] = verdict;
    if (!failure_stage.empty()) j["failureStage"] = failure_stage;
    j["tolerances"] = {{"tol", format_scalar(tol)}, {"splitTol", format_scalar(split_tol)}};
    j["seed"] = seed;
    j["scheduleTried"] = schedule_tried;
    j["verifiedNumerically"] = verified_numerically;
    j["notes"] = notes;
    return j.dump(2);
}

void GapCertificate::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ArgumentError("certificate: cannot write " + path);
    out << to_json() << "\n";
}

} // namespace gapcert
