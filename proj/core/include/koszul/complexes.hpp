#pragma once

#include "koszul/dual.hpp"

namespace koszul {

/// Everything a computation needs: validated presentation, confluent
/// rewriting system, intersection coalgebra, curved dual table.
struct Context {
    RewriteSystem rw;
    ValidationReport vreport;
    IntersectionCoalgebra coalg;
    CurvedDualTable dual;

    const Presentation& pres() const { return rw.pres(); }
    const Field& field() const { return pres().field; }
};

/// Validates, orients, checks confluence (throwing the overlap witness on
/// failure -- non-confluent presentations are rejected for everything
/// downstream), then builds C and Lambda up to max_dual_degree.
Context build_context(const Presentation& p, size_t max_dual_degree);

enum class CoeffKind { Regular, FiniteBimodule, Enveloping };

struct Coefficients {
    CoeffKind kind = CoeffKind::Regular;
    const Bimodule* bim = nullptr;

    static Coefficients regular() { return {CoeffKind::Regular, nullptr}; }
    static Coefficients finite(const Bimodule& b) { return {CoeffKind::FiniteBimodule, &b}; }
    static Coefficients enveloping() { return {CoeffKind::Enveloping, nullptr}; }
};

struct SliceBasisElt {
    size_t lam = 0;    // index into the Lambda^n basis
    Word a;            // A-part (Regular), or outer factor (Enveloping)
    Word b;            // inner factor (Enveloping)
    size_t mod = 0;    // bimodule basis index (FiniteBimodule)
};

/// Finite slice of (Lambda (x) M, d_Lambda - [e,-]) at one weight (weighted
/// modes) or of the whole finite complex (finite-bimodule coefficients).
struct ComplexSlice {
    CoeffKind kind = CoeffKind::Regular;
    bool has_weight = false;
    int weight = 0;
    int lo = 0, hi = 0;  // basis degrees covered (inclusive)
    std::vector<std::vector<SliceBasisElt>> basis;  // index n - lo
    std::vector<Matrix> d;                          // d[n-lo]: degree n -> n+1, n in lo..hi-1

    size_t dim(int n) const {
        return (n < lo || n > hi) ? 0 : basis[static_cast<size_t>(n - lo)].size();
    }
    const Matrix& dmat(int n) const;  // throws outside lo..hi-1
    long index_of(int n, const SliceBasisElt& e) const;  // -1 if absent

    /// d_{n+1} o d_n == 0 for every adjacent pair in range.
    void verify_d_squared() const;
};

/// Bases cover degrees deg_lo-1 .. deg_hi+1 (clamped at 0) so homology and
/// boundaries are available on the requested range.
ComplexSlice build_hochschild_slice(const Context& ctx, const Coefficients& m, int weight,
                                    int deg_lo, int deg_hi);
/// Finite-bimodule complexes have no weight slicing; one call covers all.
ComplexSlice build_finite_complex(const Context& ctx, const Coefficients& m, int deg_lo,
                                  int deg_hi);

struct DegreeHomology {
    int degree = 0;
    size_t dim = 0;
    std::vector<Vec> cocycles;         // kernel basis, slice coordinates
    std::vector<Vec> boundaries;       // echelon rows of the boundary space
    std::vector<Vec> representatives;  // reduced mod boundaries, deterministic
};

struct CohomologyBasis {
    bool has_weight = false;
    int weight = 0;
    int deg_lo = 0, deg_hi = 0;
    std::vector<DegreeHomology> degrees;

    const DegreeHomology& at(int n) const;
};

/// Verifies d^2 = 0 (hard failure otherwise) and computes dims plus
/// representatives on the slice's inner degree range.
CohomologyBasis homology(const ComplexSlice& slice, const Field& f, int deg_lo, int deg_hi);

/// Expresses a cocycle (slice coordinates) on the representatives modulo the
/// boundary space. Throws if the vector is not a cocycle for this slice
/// degree, or (incomplete basis -- a construction bug) not expressible.
struct ClassCoords {
    Vec on_representatives;
    Vec boundary_part;  // slice coordinates of v - sum c_i rep_i
};
ClassCoords reduce_cocycle(const Field& f, const ComplexSlice& slice, const DegreeHomology& h,
                           const Vec& v);

struct HHEntry {
    int degree;
    int weight;
    bool has_weight;
    size_t dim;
    std::vector<std::string> representatives;
};

/// Canonical text form of a slice vector: `l1*l2 (x) x1^2*x3` terms in
/// deterministic basis order.
std::string representative_string(const Context& ctx, const ComplexSlice& slice, int degree,
                                  const Vec& coords);

/// Batch driver: one entry per (degree, weight), deterministic order.
std::vector<HHEntry> hh_report(const Context& ctx, const Coefficients& m, int w_lo, int w_hi,
                               int deg_lo, int deg_hi);

/// Matrices of class -> class of (1 (x) z).class between the two bases;
/// one matrix per degree of the common range. z must be central.
std::vector<Matrix> central_action(const Context& ctx, const Coefficients& m, const NcPoly& z,
                                   const ComplexSlice& slice_from, const CohomologyBasis& from,
                                   const ComplexSlice& slice_to, const CohomologyBasis& to);

/// Throws unless normal_form([z, g_i]) == 0 for every generator.
void require_central(const Context& ctx, const NcPoly& z);

// --- Koszul resolution K = A (x) Lambda^* (x) A ---------------------------

struct ResBasisElt {
    Word left;
    size_t dual = 0;  // index into the (Lambda^*)^{-n} basis (= Lambda^n basis)
    Word right;
};

struct ResolutionSlice {
    int weight = 0;
    size_t max_n = 0;                               // degrees -max_n..0
    std::vector<std::vector<ResBasisElt>> basis;    // [n]: degree -n
    std::vector<SparseMatrix> d;                    // d[n]: degree -n -> -(n-1), n >= 1
};

ResolutionSlice build_resolution_slice(const Context& ctx, int weight);

struct ResolutionWeightReport {
    int weight = 0;
    bool d_squared_zero = false;
    size_t h0_dim = 0, a_dim = 0;         // must match
    std::vector<size_t> negative_dims;    // H^{-n} for n = 1..max_n; must be 0
    bool pass = false;
};

std::vector<ResolutionWeightReport> verify_resolution(const Context& ctx, int max_weight);

// --- truncated estimates for curved / unweighted presentations ------------

struct TruncatedEstimate {
    size_t bound = 0;  // the filtration bound D actually used
    int deg_lo = 0, deg_hi = 0;
    std::vector<long> dims;        // per degree; estimate (can be negative near the cut)
    std::vector<bool> stable;      // agrees between D and D+1
};

/// Homology of the PBW-filtration sub-quotient at word length <= D and D+1,
/// flagged stable where the two agree. Always an estimate.
TruncatedEstimate truncated_estimate(const Context& ctx, const Coefficients& m, size_t D,
                                     int deg_lo, int deg_hi);

}  // namespace koszul
