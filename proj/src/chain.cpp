#include "gapcert/chain.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace gapcert {

namespace {

using nlohmann::json;

void require_psd(const CMatrix& m, const char* name) {
    if (m.rows() != m.cols()) throw ShapeError(std::string(name) + ": not square");
    if (hermiticity_defect(m) > 1e-12)
        throw SymmetryError(std::string(name) + ": not Hermitian");
    Vector ev = eigvalsh(m);
    double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (ev(0) < -1e-10 * std::max(1.0, scale))
        throw DomainError(std::string(name) + ": not PSD (lambda0 = " +
                          std::to_string(ev(0)) + ")");
}

json matrix_to_json(const CMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"dim", m.rows()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j) {
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != dim * dim)
        throw ShapeError("ChainSpec JSON: matrix data length mismatch");
    CMatrix m(dim, dim);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index jj = 0; jj < dim; ++jj, ++k)
            m(i, jj) = Complex(data[k].at(0).get<double>(), data[k].at(1).get<double>());
    return m;
}

template <class Scalar>
BasicHermitianOp<Scalar> full_chain_impl(const ChainSpec& spec, int ell) {
    using Op = BasicHermitianOp<Scalar>;
    using Mat = typename Op::Mat;
    if (ell < 1) throw ArgumentError("build_full_chain: ell must be >= 1");
    std::vector<int> dims(ell + 2, spec.d);
    dims.front() = spec.d0;
    dims.back() = spec.d_end;
    std::vector<typename Op::LocalTerm> terms;
    auto cast = [](const CMatrix& m) {
        if constexpr (std::is_same_v<Scalar, double>)
            return Mat(m.real());
        else
            return Mat(m);
    };
    terms.push_back({0, cast(spec.H_first)});
    for (int i = 1; i < ell; ++i) terms.push_back({i, cast(spec.Hbar)});
    terms.push_back({ell, cast(spec.H_last)});
    return Op::lazy(std::move(dims), std::move(terms));
}

} // namespace

bool ChainSpec::is_real() const {
    auto real = [](const CMatrix& m) { return m.imag().norm() <= 1e-14 * std::max(1.0, m.norm()); };
    return real(Hbar) && real(H_first) && real(H_last);
}

void ChainSpec::validate() const {
    if (d < 2 || d0 < 1 || d_end < 1) throw ArgumentError("ChainSpec: bad dimensions");
    if (Hbar.rows() != std::int64_t(d) * d) throw ShapeError("ChainSpec: Hbar dim != d^2");
    if (H_first.rows() != std::int64_t(d) * d0)
        throw ShapeError("ChainSpec: H_first dim != d*d0");
    if (H_last.rows() != std::int64_t(d_end) * d)
        throw ShapeError("ChainSpec: H_last dim != dEnd*d");
    require_psd(Hbar, "Hbar");
    require_psd(H_first, "H_first");
    require_psd(H_last, "H_last");
}

ChainSpec ChainSpec::from_json_text(const std::string& text) {
    json j = json::parse(text);
    ChainSpec s;
    const auto& dims = j.at("dims");
    s.d = dims.at("d").get<int>();
    s.d0 = dims.at("d0").get<int>();
    s.d_end = dims.at("dEnd").get<int>();
    s.Hbar = matrix_from_json(j.at("Hbar"));
    s.H_first = matrix_from_json(j.at("HFirst"));
    s.H_last = matrix_from_json(j.at("HLast"));
    if (j.contains("theta")) s.theta = j.at("theta").get<double>();
    s.validate();
    return s;
}

std::string ChainSpec::to_json_text() const {
    json j;
    j["schemaVersion"] = 1;
    j["dims"] = {{"d", d}, {"d0", d0}, {"dEnd", d_end}};
    j["Hbar"] = matrix_to_json(Hbar);
    j["HFirst"] = matrix_to_json(H_first);
    j["HLast"] = matrix_to_json(H_last);
    if (theta) j["theta"] = *theta;
    return j.dump(2);
}

ChainSpec ChainSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("ChainSpec: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

void ChainSpec::to_json_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ArgumentError("ChainSpec: cannot write " + path);
    out << to_json_text() << "\n";
}

HermitianOp build_full_chain(const ChainSpec& spec, int ell) {
    return full_chain_impl<double>(spec, ell);
}

CHermitianOp build_full_chain_complex(const ChainSpec& spec, int ell) {
    return full_chain_impl<Complex>(spec, ell);
}

HermitianOp build_segment(const ChainSpec& spec, int seg_len) {
    if (seg_len < 2) throw ArgumentError("build_segment: seg_len must be >= 2");
    std::vector<int> dims(seg_len, spec.d);
    std::vector<HermitianOp::LocalTerm> terms;
    Matrix hb = spec.real_Hbar();
    for (int i = 0; i + 1 < seg_len; ++i) terms.push_back({i, hb});
    return HermitianOp::lazy(std::move(dims), std::move(terms));
}

CHermitianOp build_segment_complex(const ChainSpec& spec, int seg_len) {
    if (seg_len < 2) throw ArgumentError("build_segment: seg_len must be >= 2");
    std::vector<int> dims(seg_len, spec.d);
    std::vector<CHermitianOp::LocalTerm> terms;
    for (int i = 0; i + 1 < seg_len; ++i) terms.push_back({i, spec.Hbar});
    return CHermitianOp::lazy(std::move(dims), std::move(terms));
}

HermitianOp build_linked(const ChainSpec& spec, int n_seg, int seg_len) {
    if (n_seg < 2) throw ArgumentError("build_linked: n_seg must be >= 2");
    if (seg_len < 2) throw ArgumentError("build_linked: seg_len must be >= 2");
    const int total = n_seg * seg_len;
    std::vector<int> dims(total, spec.d);
    std::vector<HermitianOp::LocalTerm> terms;
    Matrix hb = spec.real_Hbar();
    // segment bonds, then the n_seg-1 links joining adjacent segments
    for (int s = 0; s < n_seg; ++s)
        for (int i = s * seg_len; i + 1 < (s + 1) * seg_len; ++i)
            terms.push_back({i, hb});
    for (int s = 1; s < n_seg; ++s) terms.push_back({s * seg_len - 1, hb});
    return HermitianOp::lazy(std::move(dims), std::move(terms));
}

HermitianOp build_remnant(const ChainSpec& spec, int remnant_len) {
    if (remnant_len < 0) throw ArgumentError("build_remnant: negative length");
    if (remnant_len == 0) return HermitianOp::zero({1});
    if (remnant_len == 1) return HermitianOp::zero({spec.d});
    return build_segment(spec, remnant_len);
}

FrustrationCheck check_frustration_free(const HermitianOp& op, double tol,
                                        const SolveConfig& cfg) {
    Spectrum s = lowest_eigs_auto(op, 1, cfg);
    double lam0 = s.values(0);
    return {lam0 <= tol * std::max(1.0, op.norm_bound()), lam0};
}

} // namespace gapcert
