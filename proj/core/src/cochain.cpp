#include "koszul/cochain.hpp"

namespace koszul {

namespace {

void add_term(const Field& f, CochainElement& u, size_t lam, const Word& w,
              const FieldElement& c) {
    if (f.is_zero(c)) return;
    auto [it, fresh] = u.terms.emplace(std::make_pair(lam, w), c);
    if (!fresh) {
        f.add_in_place(it->second, c);
        if (f.is_zero(it->second)) u.terms.erase(it);
    }
}

}  // namespace

CochainElement make_cochain(const Context& ctx, const Word& lambda_word, const NcPoly& a_part) {
    const Field& f = ctx.field();
    CochainElement u;
    u.degree = static_cast<int>(lambda_word.size());
    Vec lvec = ctx.dual.lambda_word_vec(f, lambda_word);
    NcPoly nf = ctx.rw.normal_form(a_part);
    for (size_t k = 0; k < lvec.size(); ++k) {
        if (f.is_zero(lvec[k])) continue;
        for (const auto& [w, c] : nf) add_term(f, u, k, w, f.mul(lvec[k], c));
    }
    return u;
}

CochainElement cochain_add(const Context& ctx, const CochainElement& u, const CochainElement& v) {
    if (!u.terms.empty() && !v.terms.empty() && u.degree != v.degree)
        throw KoszulError("cochain_add: degree mismatch");
    CochainElement r = u.terms.empty() ? v : u;
    if (u.terms.empty()) return r;
    for (const auto& [k, c] : v.terms) add_term(ctx.field(), r, k.first, k.second, c);
    return r;
}

CochainElement cochain_scale(const Context& ctx, const FieldElement& s, const CochainElement& u) {
    const Field& f = ctx.field();
    CochainElement r;
    r.degree = u.degree;
    if (f.is_zero(s)) return r;
    for (const auto& [k, c] : u.terms) r.terms.emplace(k, f.mul(s, c));
    return r;
}

CochainElement multiply(const Context& ctx, const CochainElement& u, const CochainElement& v) {
    const Field& f = ctx.field();
    CochainElement r;
    r.degree = u.degree + v.degree;
    size_t i = static_cast<size_t>(u.degree), j = static_cast<size_t>(v.degree);
    for (const auto& [ku, cu] : u.terms)
        for (const auto& [kv, cv] : v.terms) {
            Vec lu = zero_vec(f, ctx.dual.dim(i));
            if (i == 0)
                lu = Vec{f.one()};
            else
                lu[ku.first] = f.one();
            Vec lv = zero_vec(f, ctx.dual.dim(j));
            if (j == 0)
                lv = Vec{f.one()};
            else
                lv[kv.first] = f.one();
            Vec prod = ctx.dual.mul(f, i, lu, j, lv);
            if (vec_is_zero(f, prod)) continue;
            NcPoly ab = ctx.rw.normal_form_word(ku.second + kv.second);
            FieldElement cc = f.mul(cu, cv);
            for (size_t k = 0; k < prod.size(); ++k) {
                if (f.is_zero(prod[k])) continue;
                for (const auto& [w, c] : ab)
                    add_term(f, r, k, w, f.mul(cc, f.mul(prod[k], c)));
            }
        }
    return r;
}

CochainElement differential(const Context& ctx, const CochainElement& u) {
    const Field& f = ctx.field();
    const CurvedDualTable& t = ctx.dual;
    const size_t g = ctx.pres().num_gens();
    size_t n = static_cast<size_t>(u.degree);
    CochainElement r;
    r.degree = u.degree + 1;
    FieldElement sgn = (n % 2 == 0) ? f.one() : f.from_int(-1);
    for (const auto& [k, c] : u.terms) {
        // d_Lambda (x) id
        if (n < t.differential.size()) {
            const Matrix& D = t.differential[n];
            for (size_t row = 0; row < D.rows(); ++row) {
                const FieldElement& dv = D.at(row, k.first);
                if (!f.is_zero(dv)) add_term(f, r, row, k.second, f.mul(dv, c));
            }
        }
        // -[e, -]
        Vec ea = (n == 0) ? Vec{f.one()} : zero_vec(f, t.dim(n));
        if (n > 0) ea[k.first] = f.one();
        for (size_t i = 0; i < g; ++i) {
            Vec li = zero_vec(f, t.dim(1));
            li[i] = f.one();
            Vec lf = t.mul(f, 1, li, n, ea);
            Vec fl = t.mul(f, n, ea, 1, li);
            if (!vec_is_zero(f, lf)) {
                NcPoly xa = ctx.rw.normal_form_word(static_cast<char>(i) + k.second);
                for (size_t row = 0; row < lf.size(); ++row) {
                    if (f.is_zero(lf[row])) continue;
                    for (const auto& [w, wc] : xa)
                        add_term(f, r, row, w, f.neg(f.mul(c, f.mul(lf[row], wc))));
                }
            }
            if (!vec_is_zero(f, fl)) {
                NcPoly ax = ctx.rw.normal_form_word(k.second + static_cast<char>(i));
                for (size_t row = 0; row < fl.size(); ++row) {
                    if (f.is_zero(fl[row])) continue;
                    for (const auto& [w, wc] : ax)
                        add_term(f, r, row, w, f.mul(sgn, f.mul(c, f.mul(fl[row], wc))));
                }
            }
        }
    }
    return r;
}

int cochain_weight(const Context& ctx, const CochainElement& u) {
    const CurvedDualTable& t = ctx.dual;
    const Presentation& p = ctx.pres();
    std::optional<int> weight;
    for (const auto& [k, c] : u.terms) {
        int w = (u.degree == 0 ? 0 : t.weights[static_cast<size_t>(u.degree)][k.first]) +
                p.weight_of_word(k.second);
        if (weight && *weight != w) throw KoszulError("cochain is not weight-homogeneous");
        weight = w;
    }
    return weight.value_or(0);
}

Vec to_slice_coords(const Context& ctx, const ComplexSlice& slice, const CochainElement& u) {
    const Field& f = ctx.field();
    Vec v = zero_vec(f, slice.dim(u.degree));
    for (const auto& [k, c] : u.terms) {
        long idx = slice.index_of(u.degree, {k.first, k.second, Word(), 0});
        if (idx < 0)
            throw KoszulError("cochain term outside the slice (weight or degree mismatch)");
        f.add_in_place(v[static_cast<size_t>(idx)], c);
    }
    return v;
}

CochainElement from_slice_coords(const Context& ctx, const ComplexSlice& slice, int degree,
                                 const Vec& coords) {
    const Field& f = ctx.field();
    CochainElement u;
    u.degree = degree;
    const auto& basis = slice.basis[static_cast<size_t>(degree - slice.lo)];
    for (size_t i = 0; i < coords.size(); ++i)
        if (!f.is_zero(coords[i])) add_term(f, u, basis[i].lam, basis[i].a, coords[i]);
    return u;
}

ClassReduction reduce_class(const Context& ctx, const ComplexSlice& slice,
                            const CohomologyBasis& h, const CochainElement& u) {
    const Field& f = ctx.field();
    const DegreeHomology& dh = h.at(u.degree);
    Vec v = to_slice_coords(ctx, slice, u);
    ClassCoords cc = reduce_cocycle(f, slice, dh, v);
    ClassReduction out;
    out.coefficients = cc.on_representatives;
    out.boundary_part = from_slice_coords(ctx, slice, u.degree, cc.boundary_part);
    // witness: a preimage under d^{degree-1}
    if (u.degree - 1 >= slice.lo && !vec_is_zero(f, cc.boundary_part)) {
        const Matrix& dprev = slice.dmat(u.degree - 1);
        Matrix aug(f, dprev.rows(), dprev.cols() + 1);
        for (size_t r = 0; r < dprev.rows(); ++r) {
            for (size_t c = 0; c < dprev.cols(); ++c) aug.at(r, c) = dprev.at(r, c);
            aug.at(r, dprev.cols()) = cc.boundary_part[r];
        }
        std::vector<size_t> pivots;
        Matrix e = aug.rref(&pivots);
        Vec x = zero_vec(f, dprev.cols());
        for (size_t kk = 0; kk < pivots.size(); ++kk) {
            if (pivots[kk] == dprev.cols())
                throw KoszulError("boundary part has no preimage (inconsistent basis)");
            x[pivots[kk]] = e.at(kk, dprev.cols());
        }
        out.boundary_preimage = std::move(x);
    }
    return out;
}

std::vector<Vec> cup_image(const Context& ctx, const ComplexSlice& slice_a,
                           const CohomologyBasis& ha, const ComplexSlice& slice_b,
                           const CohomologyBasis& hb, const ComplexSlice& slice_target,
                           const CohomologyBasis& htarget) {
    const Field& f = ctx.field();
    const DegreeHomology& da = ha.degrees.front();
    const DegreeHomology& db = hb.degrees.front();
    std::vector<Vec> rows;
    for (const auto& ra : da.representatives)
        for (const auto& rb : db.representatives) {
            CochainElement ua = from_slice_coords(ctx, slice_a, da.degree, ra);
            CochainElement ub = from_slice_coords(ctx, slice_b, db.degree, rb);
            CochainElement prod = multiply(ctx, ua, ub);
            if (prod.is_zero()) continue;
            ClassReduction cr = reduce_class(ctx, slice_target, htarget, prod);
            rows.push_back(cr.coefficients);
        }
    return rref_rows(f, rows);
}

std::vector<SurjectivityRow> cup_surjectivity(const Context& ctx, int da, int db, int w_lo,
                                              int w_hi) {
    const Field& f = ctx.field();
    std::vector<SurjectivityRow> out;
    // weight floors: a degree-n class has weight >= n * min(-gen weights)...
    // cheapest sound bound: representatives exist only where slices are
    // nonzero, so scan a generous window below the target weight.
    int min_gen = 0;
    for (const auto& g : ctx.pres().generators) min_gen = std::max(min_gen, g.weight);
    for (int w = w_lo; w <= w_hi; ++w) {
        SurjectivityRow row;
        row.target_weight = w;
        ComplexSlice st = build_hochschild_slice(ctx, Coefficients::regular(), w, da + db,
                                                 da + db);
        CohomologyBasis ht = homology(st, f, da + db, da + db);
        row.target_dim = ht.at(da + db).dim;
        int lo_u = -(da * min_gen);
        int hi_u = w + db * min_gen;
        std::vector<Vec> rows;
        for (int u = lo_u; u <= hi_u; ++u) {
            ComplexSlice sa = build_hochschild_slice(ctx, Coefficients::regular(), u, da, da);
            CohomologyBasis hha = homology(sa, f, da, da);
            if (hha.at(da).dim == 0) continue;
            ComplexSlice sb =
                build_hochschild_slice(ctx, Coefficients::regular(), w - u, db, db);
            CohomologyBasis hhb = homology(sb, f, db, db);
            if (hhb.at(db).dim == 0) continue;
            for (const auto& ra : hha.at(da).representatives)
                for (const auto& rb : hhb.at(db).representatives) {
                    CochainElement prod =
                        multiply(ctx, from_slice_coords(ctx, sa, da, ra),
                                 from_slice_coords(ctx, sb, db, rb));
                    if (prod.is_zero()) continue;
                    ClassReduction cr = reduce_class(ctx, st, ht, prod);
                    rows.push_back(cr.coefficients);
                }
        }
        row.image_rank = rref_rows(f, rows).size();
        row.surjective = row.image_rank == row.target_dim;
        out.push_back(row);
    }
    return out;
}

std::string cochain_string(const Context& ctx, const CochainElement& u) {
    const Field& f = ctx.field();
    if (u.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : u.terms) {
        Vec lvec = zero_vec(f, ctx.dual.dim(static_cast<size_t>(u.degree)));
        std::string lam;
        if (u.degree == 0)
            lam = "1";
        else {
            lvec[k.first] = f.one();
            lam = ctx.dual.lambda_str(f, static_cast<size_t>(u.degree), lvec);
            if (lam.find(" + ") != std::string::npos || lam.find(" - ") != std::string::npos)
                lam = "(" + lam + ")";
        }
        std::string cs = f.str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        std::string pre;
        if (mag != "1")
            pre = (mag.find('+') != std::string::npos || mag.find('-') != std::string::npos)
                      ? "(" + mag + ")*"
                      : mag + "*";
        std::string term = pre + lam + " (x) " + ctx.rw.word_str(k.second);
        out += first ? (neg ? "-" + term : term) : (neg ? " - " + term : " + " + term);
        first = false;
    }
    return out;
}

}  // namespace koszul
