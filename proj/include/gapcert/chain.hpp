#pragma once

#include <string>

#include "gapcert/lanczos.hpp"
#include "gapcert/operator.hpp"

namespace gapcert {

// Two-site coupling data defining the chain Hamiltonian: bulk local dimension
// d, boundary dimensions d0 / dEnd, the bulk bond Hbar (d^2 square) and the
// two boundary bonds (d*d0 and dEnd*d square). All three PSD.
struct ChainSpec {
    int d = 0;
    int d0 = 0;
    int d_end = 0;
    CMatrix Hbar;
    CMatrix H_first;  // acts on sites (1, 0), site 0 the d0 boundary spin
    CMatrix H_last;   // acts on sites (ell+1, ell), site ell+1 the dEnd spin
    std::optional<double> theta;  // passthrough for parametric models

    bool is_real() const;
    void validate() const;  // shapes + PSD to 1e-10 relative

    Matrix real_Hbar() const { return Hbar.real(); }
    Matrix real_H_first() const { return H_first.real(); }
    Matrix real_H_last() const { return H_last.real(); }

    static ChainSpec from_json_file(const std::string& path);
    void to_json_file(const std::string& path) const;
    static ChainSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// Segmentation bookkeeping: ell bulk spins, segments of length seg_len,
// n_seg = floor(ell/seg_len), remnant = ell - n_seg*seg_len at the site-0 end.
struct Partition {
    int ell;
    int seg_len;
    int n_seg;
    int remnant;

    Partition(int ell_, int seg_len_) : ell(ell_), seg_len(seg_len_) {
        if (seg_len < 2) throw ArgumentError("Partition: seg_len must be >= 2");
        if (ell < 0) throw ArgumentError("Partition: negative length");
        n_seg = ell / seg_len;
        remnant = ell - n_seg * seg_len;
    }
};

// Full chain with boundary spins: dims [d0, d, ..., d, dEnd], ell >= 1.
HermitianOp build_full_chain(const ChainSpec& spec, int ell);
CHermitianOp build_full_chain_complex(const ChainSpec& spec, int ell);

// Open segment of seg_len bulk spins (no boundary terms), seg_len >= 2.
HermitianOp build_segment(const ChainSpec& spec, int seg_len);
CHermitianOp build_segment_complex(const ChainSpec& spec, int seg_len);

// n_seg segments of seg_len spins plus the n_seg-1 link bonds (n_seg >= 2).
HermitianOp build_linked(const ChainSpec& spec, int n_seg, int seg_len);

// Open chain of remnant_len spins; lengths 0 and 1 give a zero operator.
HermitianOp build_remnant(const ChainSpec& spec, int remnant_len);

struct FrustrationCheck {
    bool frustration_free;
    double lambda0;
};
FrustrationCheck check_frustration_free(const HermitianOp& op, double tol,
                                        const SolveConfig& cfg = SolveConfig::defaults());

} // namespace gapcert
