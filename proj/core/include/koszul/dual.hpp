#pragma once

#include "koszul/intersection.hpp"

namespace koszul {

struct CheckResult {
    bool pass = true;
    std::string witness;  // set on failure
};

/// The Koszul dual curved dg algebra Lambda = C^* with the signed
/// identification k<V^*> -> (T<V>)^* (the (-1)^{n(n-1)/2} convention).
/// Basis of Lambda^i = dual basis of the computed C^{-i} basis; products are
/// dualized coproducts, the differential transposes the coderivation, and
/// the curvature is -alpha_0 read off in the dual basis.
struct CurvedDualTable {
    size_t num_gens = 0;
    size_t top_degree = 0;  // largest degree with Lambda^i != 0 in range
    bool range_capped = false;

    std::vector<size_t> dims;                // per degree 0..computed
    std::vector<std::vector<int>> weights;   // weight of each basis vector (negated C weight)
    std::vector<Matrix> differential;        // differential[i]: Lambda^i -> Lambda^{i+1}
    Vec curvature;                           // coordinates in Lambda^2

    // product[{i,j}][a][b] = coordinates of basis_a^i . basis_b^j in Lambda^{i+j}
    std::map<std::pair<size_t, size_t>, std::vector<std::vector<Vec>>> product;

    // deterministic monomial expression of each degree: words whose products
    // of degree-1 generators form a basis, with the expansion of each word
    std::vector<std::vector<Word>> monomial_words;   // per degree
    std::vector<Matrix> monomial_matrix;             // columns = coords of each word

    size_t dim(size_t i) const { return i < dims.size() ? dims[i] : 0; }
    bool degree_in_range(size_t i) const { return i < dims.size() || !range_capped; }

    /// Coordinates of the product of degree-1 generators along the word.
    Vec lambda_word_vec(const Field& f, const Word& w) const;
    /// Multiply coordinate vectors u in Lambda^i, v in Lambda^j.
    Vec mul(const Field& f, size_t i, const Vec& u, size_t j, const Vec& v) const;
    /// Express a coordinate vector as a combination of the monomial words;
    /// used for printing representatives in l1*l2 notation.
    std::string lambda_str(const Field& f, size_t degree, const Vec& coords) const;
};

CurvedDualTable compute_dual(const IntersectionCoalgebra& c, const Field& f);
void build_curved_structure(const RewriteSystem& rw, const IntersectionCoalgebra& c,
                            CurvedDualTable& t);

/// d^2 = [c, -] on every basis element in range, and d(c) = 0.
CheckResult verify_curved(const Field& f, const CurvedDualTable& t);

/// For every canonical relation r: -f_C(r) - pi(d_C r) + mu(pi (x) pi)Delta(r)
/// must evaluate to 0 in A (products through normal_form).
CheckResult twisting_cochain_check(const RewriteSystem& rw, const IntersectionCoalgebra& c);

/// The Maurer-Cartan anchor for e = sum_i lambda_i (x) x_i:
/// d_{Lambda (x) A}(e) = e^2 + c (x) 1, all A-products in normal form.
CheckResult e_identity_check(const RewriteSystem& rw, const CurvedDualTable& t);

/// Leibniz for d on all basis pairs in range (property check).
CheckResult leibniz_check(const Field& f, const CurvedDualTable& t);
/// Associativity of the product on all basis triples in range.
CheckResult associativity_check(const Field& f, const CurvedDualTable& t);

}  // namespace koszul
