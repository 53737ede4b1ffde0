#include "koszul/intersection.hpp"

namespace koszul {

namespace {

// basis rows of span{u (x) v} inside V^{(x)(p+q)} for u, v running over the
// given row sets of V^{(x)p}, V^{(x)q}
std::vector<Vec> tensor_rows(const Field& f, const std::vector<Vec>& us, size_t udim,
                             const std::vector<Vec>& vs, size_t vdim) {
    std::vector<Vec> out;
    out.reserve(us.size() * vs.size());
    for (const auto& u : us)
        for (const auto& v : vs) {
            Vec t = zero_vec(f, udim * vdim);
            for (size_t a = 0; a < udim; ++a) {
                if (f.is_zero(u[a])) continue;
                for (size_t b = 0; b < vdim; ++b) {
                    if (f.is_zero(v[b])) continue;
                    t[a * vdim + b] = f.mul(u[a], v[b]);
                }
            }
            out.push_back(std::move(t));
        }
    return out;
}

// intersection of two row-span subspaces of the same ambient space
std::vector<Vec> intersect_spans(const Field& f, const std::vector<Vec>& a,
                                 const std::vector<Vec>& b, size_t ambient) {
    if (a.empty() || b.empty()) return {};
    Matrix m(f, ambient, a.size() + b.size());
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t r = 0; r < ambient; ++r) m.at(r, j) = a[j][r];
    for (size_t j = 0; j < b.size(); ++j)
        for (size_t r = 0; r < ambient; ++r) m.at(r, a.size() + j) = f.neg(b[j][r]);
    std::vector<Vec> inter;
    for (const auto& k : m.kernel_basis()) {
        Vec v = zero_vec(f, ambient);
        for (size_t j = 0; j < a.size(); ++j) vec_add_scaled(f, v, k[j], a[j]);
        if (!vec_is_zero(f, v)) inter.push_back(std::move(v));
    }
    return rref_rows(f, inter);
}

int homogeneous_weight(const Presentation& p, const Vec& v, size_t len) {
    const Field& f = p.field;
    const size_t g = p.num_gens();
    int weight = 0;
    bool found = false;
    for (size_t idx = 0; idx < v.size(); ++idx) {
        if (f.is_zero(v[idx])) continue;
        size_t rem = idx;
        int w = 0;
        for (size_t pos = 0; pos < len; ++pos) {
            size_t div = 1;
            for (size_t q = pos + 1; q < len; ++q) div *= g;
            size_t gi = rem / div;
            rem %= div;
            w += p.generators[gi].weight;
        }
        if (!found) {
            weight = w;
            found = true;
        } else if (w != weight) {
            throw KoszulError("intersection coalgebra basis vector is not weight-homogeneous");
        }
    }
    return weight;
}

}  // namespace

IntersectionCoalgebra intersection_coalgebra(const RewriteSystem& rw, size_t max_degree) {
    const Presentation& p = rw.pres();
    const Field& f = p.field;
    const size_t g = p.num_gens();
    IntersectionCoalgebra c;
    c.num_gens = g;
    c.max_degree = max_degree;

    // C^0 = k, C^{-1} = V
    c.components.push_back({Vec{f.one()}});
    if (max_degree >= 1) {
        std::vector<Vec> v1;
        for (size_t i = 0; i < g; ++i) {
            Vec e = zero_vec(f, g);
            e[i] = f.one();
            v1.push_back(std::move(e));
        }
        c.components.push_back(std::move(v1));
    }
    // C^{-2} = R, in the rewriting system's canonical basis
    const auto& rels = rw.canonical_relations();
    if (max_degree >= 2 && !rels.empty()) {
        std::vector<Vec> r2;
        for (const auto& rel : rels) r2.push_back(rel.quadratic);
        c.components.push_back(std::move(r2));
        // C^{-i} = (C^{-(i-1)} (x) V) cap (V (x) C^{-(i-1)})
        for (size_t i = 3; i <= max_degree; ++i) {
            size_t prev_dim = 1;
            for (size_t q = 0; q + 1 < i; ++q) prev_dim *= g;
            const auto& prev = c.components[i - 1];
            if (prev.empty()) break;
            auto left = tensor_rows(f, prev, prev_dim, c.components[1], g);
            auto right = tensor_rows(f, c.components[1], g, prev, prev_dim);
            auto inter = intersect_spans(f, left, right, prev_dim * g);
            if (inter.empty()) break;
            c.components.push_back(std::move(inter));
        }
    }
    c.top_degree = c.components.size() - 1;
    while (c.top_degree > 0 && c.components[c.top_degree].empty()) --c.top_degree;
    c.capped = (c.components.size() == max_degree + 1) && !c.components.back().empty();

    // weights
    for (size_t i = 0; i < c.components.size(); ++i) {
        std::vector<int> ws;
        for (const auto& v : c.components[i]) ws.push_back(homogeneous_weight(p, v, i));
        c.weights.push_back(std::move(ws));
    }

    // curved data: f_C = alpha_0 and the coderivation built from alpha_1
    c.f_C = zero_vec(f, rels.size());
    for (size_t k = 0; k < rels.size(); ++k) c.f_C[k] = rels[k].constant;

    c.d_C.emplace_back(f, 1, 0);  // placeholders at degrees 0, 1
    if (c.components.size() > 1) c.d_C.emplace_back(f, 1, g);
    // pivot word of each canonical relation, for the window contraction
    std::vector<int> pivot_of_pair(g * g, -1);
    for (size_t k = 0; k < rels.size(); ++k) {
        // leading word = deg-lex max nonzero coordinate
        int best = -1;
        for (size_t w = 0; w < g * g; ++w) {
            if (f.is_zero(rels[k].quadratic[w])) continue;
            if (best < 0) {
                best = static_cast<int>(w);
                continue;
            }
            Word ww{static_cast<char>(w / g), static_cast<char>(w % g)};
            Word bw{static_cast<char>(best / g), static_cast<char>(best % g)};
            if (deglex_less(bw, ww)) best = static_cast<int>(w);
        }
        pivot_of_pair[static_cast<size_t>(best)] = static_cast<int>(k);
    }
    for (size_t i = 2; i < c.components.size(); ++i) {
        const auto& basis = c.components[i];
        size_t lower_ambient = 1;
        for (size_t q = 0; q + 1 < i; ++q) lower_ambient *= g;
        Matrix m(f, c.dim(i - 1), basis.size());
        for (size_t k = 0; k < basis.size(); ++k) {
            // d_C(c) = sum_j (-1)^{j-1} (1 ... alpha_1 ... 1)(c), contracting
            // the window at positions (j, j+1); only pivot pairs contribute
            // since c's window slices lie in R.
            Vec img = zero_vec(f, lower_ambient);
            const Vec& cv = basis[k];
            for (size_t idx = 0; idx < cv.size(); ++idx) {
                if (f.is_zero(cv[idx])) continue;
                // decode word
                Word w(i, 0);
                size_t rem = idx;
                for (size_t pos = 0; pos < i; ++pos) {
                    size_t div = 1;
                    for (size_t q = pos + 1; q < i; ++q) div *= g;
                    w[pos] = static_cast<char>(rem / div);
                    rem %= div;
                }
                for (size_t j = 0; j + 1 < i; ++j) {
                    int rel = pivot_of_pair[static_cast<size_t>(w[j]) * g +
                                            static_cast<size_t>(w[j + 1])];
                    if (rel < 0) continue;
                    FieldElement sign = (j % 2 == 0) ? f.one() : f.from_int(-1);
                    for (size_t a = 0; a < g; ++a) {
                        const FieldElement& la = rels[static_cast<size_t>(rel)].linear[a];
                        if (f.is_zero(la)) continue;
                        Word nw = w.substr(0, j) + static_cast<char>(a) + w.substr(j + 2);
                        size_t nidx = 0;
                        for (char ch : nw) nidx = nidx * g + static_cast<size_t>(ch);
                        FieldElement contrib = f.mul(f.mul(sign, cv[idx]), la);
                        f.add_in_place(img[nidx], contrib);
                    }
                }
            }
            if (i == 2) {
                for (size_t a = 0; a < g; ++a) m.at(a, k) = img[a];
            } else {
                SpanReduction sr = reduce_mod_span(f, img, c.components[i - 1]);
                if (!sr.in_span)
                    throw KoszulError(
                        "coderivation leaves the intersection coalgebra (inconsistent "
                        "filtered presentation)");
                for (size_t a = 0; a < c.dim(i - 1); ++a) m.at(a, k) = sr.coefficients[a];
            }
        }
        c.d_C.push_back(std::move(m));
    }
    return c;
}

std::optional<std::string> coproduct_closure_failure(const RewriteSystem& rw,
                                                     const IntersectionCoalgebra& c) {
    const Field& f = rw.pres().field;
    const size_t g = c.num_gens;
    for (size_t n = 2; n < c.components.size(); ++n) {
        for (size_t split = 1; split + 1 <= n; ++split) {
            size_t q = n - split;
            size_t pdim = 1, qdim = 1;
            for (size_t t = 0; t < split; ++t) pdim *= g;
            for (size_t t = 0; t < q; ++t) qdim *= g;
            if (c.dim(split) == 0 || c.dim(q) == 0) {
                // the (split, q) component of Delta must then vanish; it equals
                // the element itself reshaped, which is nonzero -- only possible
                // if this component of C vanishes entirely
                if (!c.components[n].empty())
                    return "Delta_{" + std::to_string(split) + "," + std::to_string(q) +
                           "} of C^{-" + std::to_string(n) + "} cannot land in C (x) C";
                continue;
            }
            auto prod =
                tensor_rows(f, c.components[split], pdim, c.components[q], qdim);
            Echelon ech(f);
            for (auto& r : prod) ech.insert(std::move(r));
            for (size_t k = 0; k < c.components[n].size(); ++k) {
                if (!ech.contains(c.components[n][k]))
                    return "basis vector " + std::to_string(k) + " of C^{-" +
                           std::to_string(n) + "} is not in C^{-" + std::to_string(split) +
                           "} (x) C^{-" + std::to_string(q) + "}";
            }
        }
    }
    return std::nullopt;
}

}  // namespace koszul
