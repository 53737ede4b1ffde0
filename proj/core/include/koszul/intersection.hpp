#pragma once

#include "koszul/rewriting.hpp"

namespace koszul {

/// The graded subcoalgebra C of the tensor coalgebra with C^0 = k, C^{-1} = V
/// and C^{-i} the intersection of all V (x) ... R ... (x) V windows, together
/// with the curved dg coalgebra data d_C (coderivation induced by the linear
/// parts of the relations) and f_C (the constant parts, on C^{-2} = R).
struct IntersectionCoalgebra {
    size_t num_gens = 0;
    size_t max_degree = 0;   // requested cap
    size_t top_degree = 0;   // largest computed i with C^{-i} != 0
    bool capped = false;     // C^{-max_degree} != 0: more degrees may exist

    // components[i]: basis rows of C^{-i} inside V^{(x)i} (RREF rows, so
    // weight-homogeneous whenever the relations are). components.size() is
    // the number of computed degrees (top_degree + 1, or max_degree + 1 when
    // capped).
    std::vector<std::vector<Vec>> components;
    std::vector<std::vector<int>> weights;  // weight of each basis vector

    // d_C[i]: C^{-i} -> C^{-(i-1)} in the computed bases (i >= 2);
    // d_C[0], d_C[1] are zero maps. Column k holds d_C of basis vector k.
    std::vector<Matrix> d_C;
    Vec f_C;  // alpha_0 on the C^{-2} basis

    size_t dim(size_t i) const { return i < components.size() ? components[i].size() : 0; }
};

/// Computes C up to max_degree, stopping early when a component vanishes.
/// The C^{-2} basis is the rewriting system's canonical relation basis, so
/// d_C|C^{-2} and f_C line up with alpha_1, alpha_0 of those relations.
IntersectionCoalgebra intersection_coalgebra(const RewriteSystem& rw, size_t max_degree);

/// Lemma-level invariant: every component of the coproduct of every basis
/// element lies in C (x) C. Returns an explanation on failure.
std::optional<std::string> coproduct_closure_failure(const RewriteSystem& rw,
                                                     const IntersectionCoalgebra& c);

}  // namespace koszul
