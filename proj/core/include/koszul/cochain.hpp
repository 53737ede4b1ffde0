#pragma once

#include "koszul/complexes.hpp"

namespace koszul {

/// Homogeneous element of the cochain dg algebra C(A) = Lambda (x) A.
/// Terms are (index into the Lambda^degree basis, PBW-normal A-word).
struct CochainElement {
    int degree = 0;
    std::map<std::pair<size_t, Word>, FieldElement> terms;

    bool is_zero() const { return terms.empty(); }
};

/// lambda_word is multiplied out through the structure constants; the A-part
/// is normal-formed. The workhorse for entering table classes like
/// l2*l3 (x) x1^n.
CochainElement make_cochain(const Context& ctx, const Word& lambda_word, const NcPoly& a_part);
CochainElement cochain_add(const Context& ctx, const CochainElement& u, const CochainElement& v);
CochainElement cochain_scale(const Context& ctx, const FieldElement& s, const CochainElement& u);

/// (f (x) a)(g (x) b) = fg (x) normal_form(ab); degrees and weights add.
CochainElement multiply(const Context& ctx, const CochainElement& u, const CochainElement& v);

/// Differential d_Lambda - [e,-] applied termwise (for Leibniz checks and
/// cocycle tests outside a fixed slice).
CochainElement differential(const Context& ctx, const CochainElement& u);

/// Total weight; throws if the element is not weight-homogeneous.
int cochain_weight(const Context& ctx, const CochainElement& u);

Vec to_slice_coords(const Context& ctx, const ComplexSlice& slice, const CochainElement& u);
CochainElement from_slice_coords(const Context& ctx, const ComplexSlice& slice, int degree,
                                 const Vec& coords);

struct ClassReduction {
    Vec coefficients;                 // on the representatives of the slice homology
    CochainElement boundary_part;     // u - sum c_i rep_i, an explicit boundary
    Vec boundary_preimage;            // slice coords p at degree-1 with d(p) = boundary_part
};

/// Expresses a cocycle on the computed basis classes, with the boundary
/// witness. Throws when u is not a cocycle or not expressible.
ClassReduction reduce_class(const Context& ctx, const ComplexSlice& slice,
                            const CohomologyBasis& h, const CochainElement& u);

/// Span of all pairwise products of degree-1 representatives from `a` and
/// `b`, as echelon rows over the H^2 representative coordinates of `target`.
std::vector<Vec> cup_image(const Context& ctx, const ComplexSlice& slice_a,
                           const CohomologyBasis& ha, const ComplexSlice& slice_b,
                           const CohomologyBasis& hb, const ComplexSlice& slice_target,
                           const CohomologyBasis& htarget);

struct SurjectivityRow {
    int target_weight = 0;
    size_t image_rank = 0;
    size_t target_dim = 0;
    bool surjective = false;
};

/// Rank of the cup product HH^{da} x HH^{db} -> HH^{da+db} per target weight.
/// Regular (algebra) coefficients only.
std::vector<SurjectivityRow> cup_surjectivity(const Context& ctx, int da, int db, int w_lo,
                                              int w_hi);

std::string cochain_string(const Context& ctx, const CochainElement& u);

}  // namespace koszul
