#include "koszul/complexes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace koszul {

namespace {

using EltKey = std::tuple<size_t, Word, Word, size_t>;

EltKey key_of(const SliceBasisElt& e) { return {e.lam, e.a, e.b, e.mod}; }

struct TargetIndex {
    std::map<EltKey, size_t> m;
    long find(const SliceBasisElt& e) const {
        auto it = m.find(key_of(e));
        return it == m.end() ? -1 : static_cast<long>(it->second);
    }
};

TargetIndex index_basis(const std::vector<SliceBasisElt>& basis) {
    TargetIndex t;
    for (size_t i = 0; i < basis.size(); ++i) t.m.emplace(key_of(basis[i]), i);
    return t;
}

Vec unit_vec(const Field& f, size_t n, size_t i) {
    Vec v = zero_vec(f, n);
    v[i] = f.one();
    return v;
}

}  // namespace

Context build_context(const Presentation& p, size_t max_dual_degree) {
    Context ctx;
    ctx.vreport = validate(p);
    ctx.rw = RewriteSystem::build(p);
    if (!ctx.rw.confluent()) {
        const auto& w = *ctx.rw.confluence().failure;
        auto name = [&](int i) { return p.generators[static_cast<size_t>(i)].name; };
        throw KoszulError("presentation is not PBW-confluent: overlap " + name(w.k) + "*" +
                          name(w.j) + "*" + name(w.i) + " reduces to both (" + w.left_nf +
                          ") and (" + w.right_nf + ")");
    }
    ctx.coalg = intersection_coalgebra(ctx.rw, max_dual_degree);
    ctx.dual = compute_dual(ctx.coalg, p.field);
    build_curved_structure(ctx.rw, ctx.coalg, ctx.dual);
    return ctx;
}

const Matrix& ComplexSlice::dmat(int n) const {
    if (n < lo || n >= hi) throw KoszulError("slice differential out of range");
    return d[static_cast<size_t>(n - lo)];
}

long ComplexSlice::index_of(int n, const SliceBasisElt& e) const {
    if (n < lo || n > hi) return -1;
    const auto& bs = basis[static_cast<size_t>(n - lo)];
    for (size_t i = 0; i < bs.size(); ++i)
        if (key_of(bs[i]) == key_of(e)) return static_cast<long>(i);
    return -1;
}

void ComplexSlice::verify_d_squared() const {
    for (size_t k = 0; k + 1 < d.size(); ++k) {
        Matrix prod = d[k + 1].mul(d[k]);
        if (!prod.is_zero())
            throw KoszulError("d^2 != 0 on slice (construction bug) at degree " +
                              std::to_string(lo + static_cast<int>(k)));
    }
}

namespace {

// Differential assembly shared by the weighted, finite and truncated builders.
// `act_left(i, elt)` / `act_right(i, elt)` produce the module part of
// x_i . m / m . x_i as (elt, coeff) terms; the lambda bookkeeping is common.
struct SliceBuilder {
    const Context& ctx;
    const Field& f;

    std::vector<std::pair<SliceBasisElt, FieldElement>> apply_d(
        int n, const SliceBasisElt& src,
        const std::function<std::vector<std::pair<SliceBasisElt, FieldElement>>(
            size_t, const SliceBasisElt&)>& act_left,
        const std::function<std::vector<std::pair<SliceBasisElt, FieldElement>>(
            size_t, const SliceBasisElt&)>& act_right) const {
        const CurvedDualTable& t = ctx.dual;
        const size_t g = ctx.pres().num_gens();
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        size_t un = static_cast<size_t>(n);
        // d_Lambda (x) id
        if (un < t.differential.size() && t.dim(un) > 0) {
            const Matrix& D = t.differential[un];
            for (size_t k = 0; k < D.rows(); ++k) {
                const FieldElement& c = D.at(k, src.lam);
                if (f.is_zero(c)) continue;
                SliceBasisElt e = src;
                e.lam = k;
                out.emplace_back(e, c);
            }
        }
        // -[e, -]
        FieldElement sgn = (n % 2 == 0) ? f.one() : f.from_int(-1);
        for (size_t i = 0; i < g; ++i) {
            Vec li = unit_vec(f, t.dim(1), i);
            Vec ea = unit_vec(f, t.dim(un), src.lam);
            Vec lf = t.mul(f, 1, li, un, ea);  // lambda_i . phi
            Vec fl = t.mul(f, un, ea, 1, li);  // phi . lambda_i
            if (!vec_is_zero(f, lf)) {
                for (auto& [elt, mc] : act_left(i, src)) {
                    for (size_t k = 0; k < lf.size(); ++k) {
                        if (f.is_zero(lf[k])) continue;
                        SliceBasisElt e = elt;
                        e.lam = k;
                        out.emplace_back(e, f.neg(f.mul(lf[k], mc)));
                    }
                }
            }
            if (!vec_is_zero(f, fl)) {
                for (auto& [elt, mc] : act_right(i, src)) {
                    for (size_t k = 0; k < fl.size(); ++k) {
                        if (f.is_zero(fl[k])) continue;
                        SliceBasisElt e = elt;
                        e.lam = k;
                        out.emplace_back(e, f.mul(sgn, f.mul(fl[k], mc)));
                    }
                }
            }
        }
        return out;
    }
};

Matrix assemble(const Field& f, const std::vector<SliceBasisElt>& source,
                const std::vector<SliceBasisElt>& target, const TargetIndex& tindex,
                const std::function<std::vector<std::pair<SliceBasisElt, FieldElement>>(
                    const SliceBasisElt&)>& image,
                bool allow_drop) {
    Matrix m(f, target.size(), source.size());
    for (size_t s = 0; s < source.size(); ++s) {
        for (auto& [elt, c] : image(source[s])) {
            if (f.is_zero(c)) continue;
            long t = tindex.find(elt);
            if (t < 0) {
                if (allow_drop) continue;  // truncation cut
                throw KoszulError("differential left the slice (weight bookkeeping bug)");
            }
            f.add_in_place(m.at(static_cast<size_t>(t), s), c);
        }
    }
    return m;
}

}  // namespace

ComplexSlice build_hochschild_slice(const Context& ctx, const Coefficients& m, int weight,
                                    int deg_lo, int deg_hi) {
    const Field& f = ctx.field();
    const CurvedDualTable& t = ctx.dual;
    if (m.kind == CoeffKind::FiniteBimodule)
        return build_finite_complex(ctx, m, deg_lo, deg_hi);
    if (!ctx.vreport.weighted)
        throw KoszulError(
            "exact weighted slices need a weight-homogeneous presentation; rerun in "
            "truncation mode (--truncate D)");

    ComplexSlice slice;
    slice.kind = m.kind;
    slice.has_weight = true;
    slice.weight = weight;
    slice.lo = std::max(0, deg_lo - 1);
    slice.hi = deg_hi + 1;
    if (t.range_capped && static_cast<size_t>(slice.hi) >= t.dims.size())
        throw KoszulError("requested degrees exceed the computed dual range; raise "
                          "--max-dual-degree");

    for (int n = slice.lo; n <= slice.hi; ++n) {
        std::vector<SliceBasisElt> bs;
        size_t un = static_cast<size_t>(n);
        for (size_t a = 0; a < t.dim(un); ++a) {
            int rem = weight - t.weights[un][a];
            if (m.kind == CoeffKind::Regular) {
                if (rem < 0) continue;
                for (const auto& w : ctx.rw.normal_words_of_weight(rem))
                    bs.push_back({a, w, Word(), 0});
            } else {  // Enveloping
                for (int wu = 0; wu <= rem; ++wu) {
                    auto us = ctx.rw.normal_words_of_weight(wu);
                    auto vs = ctx.rw.normal_words_of_weight(rem - wu);
                    for (const auto& u : us)
                        for (const auto& v : vs) bs.push_back({a, u, v, 0});
                }
            }
        }
        slice.basis.push_back(std::move(bs));
    }

    SliceBuilder sb{ctx, f};
    auto act_left = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        if (m.kind == CoeffKind::Regular) {
            NcPoly p = ctx.rw.normal_form_word(static_cast<char>(i) + e.a);
            for (const auto& [w, c] : p) out.push_back({{0, w, Word(), 0}, c});
        } else {
            NcPoly p = ctx.rw.normal_form_word(static_cast<char>(i) + e.a);
            for (const auto& [w, c] : p) out.push_back({{0, w, e.b, 0}, c});
        }
        return out;
    };
    auto act_right = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        if (m.kind == CoeffKind::Regular) {
            NcPoly p = ctx.rw.normal_form_word(e.a + static_cast<char>(i));
            for (const auto& [w, c] : p) out.push_back({{0, w, Word(), 0}, c});
        } else {
            NcPoly p = ctx.rw.normal_form_word(e.b + static_cast<char>(i));
            for (const auto& [w, c] : p) out.push_back({{0, e.a, w, 0}, c});
        }
        return out;
    };
    for (int n = slice.lo; n < slice.hi; ++n) {
        const auto& target = slice.basis[static_cast<size_t>(n + 1 - slice.lo)];
        TargetIndex ti = index_basis(target);
        slice.d.push_back(assemble(
            f, slice.basis[static_cast<size_t>(n - slice.lo)], target, ti,
            [&](const SliceBasisElt& src) { return sb.apply_d(n, src, act_left, act_right); },
            false));
    }
    return slice;
}

ComplexSlice build_finite_complex(const Context& ctx, const Coefficients& m, int deg_lo,
                                  int deg_hi) {
    if (m.kind != CoeffKind::FiniteBimodule || m.bim == nullptr)
        throw KoszulError("build_finite_complex needs finite-bimodule coefficients");
    const Field& f = ctx.field();
    const CurvedDualTable& t = ctx.dual;
    const Bimodule& B = *m.bim;

    ComplexSlice slice;
    slice.kind = m.kind;
    slice.has_weight = false;
    slice.lo = std::max(0, deg_lo - 1);
    slice.hi = deg_hi + 1;
    if (t.range_capped && static_cast<size_t>(slice.hi) >= t.dims.size())
        throw KoszulError("requested degrees exceed the computed dual range; raise "
                          "--max-dual-degree");
    for (int n = slice.lo; n <= slice.hi; ++n) {
        std::vector<SliceBasisElt> bs;
        for (size_t a = 0; a < t.dim(static_cast<size_t>(n)); ++a)
            for (size_t b = 0; b < B.dim; ++b) bs.push_back({a, Word(), Word(), b});
        slice.basis.push_back(std::move(bs));
    }
    SliceBuilder sb{ctx, f};
    auto act_left = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        for (size_t r = 0; r < B.dim; ++r) {
            const FieldElement& c = B.left[i].at(r, e.mod);
            if (!f.is_zero(c)) out.push_back({{0, Word(), Word(), r}, c});
        }
        return out;
    };
    auto act_right = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        for (size_t r = 0; r < B.dim; ++r) {
            const FieldElement& c = B.right[i].at(r, e.mod);
            if (!f.is_zero(c)) out.push_back({{0, Word(), Word(), r}, c});
        }
        return out;
    };
    for (int n = slice.lo; n < slice.hi; ++n) {
        const auto& target = slice.basis[static_cast<size_t>(n + 1 - slice.lo)];
        TargetIndex ti = index_basis(target);
        slice.d.push_back(assemble(
            f, slice.basis[static_cast<size_t>(n - slice.lo)], target, ti,
            [&](const SliceBasisElt& src) { return sb.apply_d(n, src, act_left, act_right); },
            false));
    }
    return slice;
}

const DegreeHomology& CohomologyBasis::at(int n) const {
    for (const auto& d : degrees)
        if (d.degree == n) return d;
    throw KoszulError("no homology computed at degree " + std::to_string(n));
}

CohomologyBasis homology(const ComplexSlice& slice, const Field& f, int deg_lo, int deg_hi) {
    slice.verify_d_squared();
    CohomologyBasis out;
    out.has_weight = slice.has_weight;
    out.weight = slice.weight;
    out.deg_lo = deg_lo;
    out.deg_hi = deg_hi;
    for (int n = deg_lo; n <= deg_hi; ++n) {
        DegreeHomology h;
        h.degree = n;
        if (slice.dim(n) == 0) {
            out.degrees.push_back(std::move(h));
            continue;
        }
        h.cocycles = slice.dmat(n).kernel_basis();
        Echelon bech(f);
        if (n - 1 >= slice.lo) {
            const Matrix& dprev = slice.dmat(n - 1);
            for (size_t c = 0; c < dprev.cols(); ++c) {
                Vec col(dprev.rows(), f.zero());
                for (size_t r = 0; r < dprev.rows(); ++r) col[r] = dprev.at(r, c);
                bech.insert(std::move(col));
            }
        }
        h.boundaries = bech.rows();
        Echelon quot(f);
        for (const auto& b : h.boundaries) quot.insert(b);
        for (const auto& k : rref_rows(f, h.cocycles)) {
            std::optional<Vec> res = quot.insert(k);
            if (res) h.representatives.push_back(*res);
        }
        h.dim = h.representatives.size();
        if (h.dim != h.cocycles.size() - h.boundaries.size())
            throw KoszulError("homology bookkeeping mismatch");  // boundaries must be cocycles
        out.degrees.push_back(std::move(h));
    }
    return out;
}

ClassCoords reduce_cocycle(const Field& f, const ComplexSlice& slice, const DegreeHomology& h,
                           const Vec& v) {
    if (h.degree < slice.hi && !vec_is_zero(f, slice.dmat(h.degree).apply(v)))
        throw KoszulError("reduce_cocycle: vector is not a cocycle");
    Echelon bech(f);
    for (const auto& b : h.boundaries) bech.insert(b);
    Vec rho = bech.reduce(v);
    SpanReduction sr = reduce_mod_span(f, rho, h.representatives);
    if (!sr.in_span)
        throw KoszulError("reduce_cocycle: cocycle not expressible (incomplete basis)");
    ClassCoords out;
    out.on_representatives = sr.coefficients;
    Vec combo = zero_vec(f, v.size());
    for (size_t i = 0; i < h.representatives.size(); ++i)
        vec_add_scaled(f, combo, sr.coefficients[i], h.representatives[i]);
    out.boundary_part = vec_sub(f, v, combo);
    return out;
}

namespace {

std::string coeff_prefix(const Field& f, const FieldElement& c, bool& negated) {
    std::string cs = f.str(c);
    negated = !cs.empty() && cs[0] == '-';
    std::string mag = negated ? cs.substr(1) : cs;
    if (mag == "1") return "";
    if (mag.find('+') != std::string::npos || mag.find('-') != std::string::npos)
        return "(" + mag + ")*";
    return mag + "*";
}

}  // namespace

std::string representative_string(const Context& ctx, const ComplexSlice& slice, int degree,
                                  const Vec& coords) {
    const Field& f = ctx.field();
    const auto& basis = slice.basis[static_cast<size_t>(degree - slice.lo)];
    std::string out;
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (f.is_zero(coords[i])) continue;
        const SliceBasisElt& e = basis[i];
        std::string lam =
            ctx.dual.lambda_str(f, static_cast<size_t>(degree),
                                unit_vec(f, ctx.dual.dim(static_cast<size_t>(degree)), e.lam));
        if (lam.find(" + ") != std::string::npos || lam.find(" - ") != std::string::npos)
            lam = "(" + lam + ")";
        std::string mod;
        switch (slice.kind) {
            case CoeffKind::Regular:
                mod = ctx.rw.word_str(e.a);
                break;
            case CoeffKind::Enveloping:
                mod = ctx.rw.word_str(e.a) + " (x) " + ctx.rw.word_str(e.b);
                break;
            case CoeffKind::FiniteBimodule:
                mod = "m" + std::to_string(e.mod + 1);
                break;
        }
        bool neg = false;
        std::string pre = coeff_prefix(f, coords[i], neg);
        std::string term = pre + lam + " (x) " + mod;
        out += first ? (neg ? "-" + term : term) : (neg ? " - " + term : " + " + term);
        first = false;
    }
    return out.empty() ? "0" : out;
}

std::vector<HHEntry> hh_report(const Context& ctx, const Coefficients& m, int w_lo, int w_hi,
                               int deg_lo, int deg_hi) {
    std::vector<HHEntry> out;
    const Field& f = ctx.field();
    if (m.kind == CoeffKind::FiniteBimodule) {
        ComplexSlice slice = build_finite_complex(ctx, m, deg_lo, deg_hi);
        CohomologyBasis h = homology(slice, f, deg_lo, deg_hi);
        for (const auto& dh : h.degrees) {
            HHEntry e;
            e.degree = dh.degree;
            e.weight = 0;
            e.has_weight = false;
            e.dim = dh.dim;
            for (const auto& r : dh.representatives)
                e.representatives.push_back(representative_string(ctx, slice, dh.degree, r));
            out.push_back(std::move(e));
        }
        return out;
    }
    for (int n = deg_lo; n <= deg_hi; ++n)
        for (int w = w_lo; w <= w_hi; ++w) out.push_back(HHEntry{n, w, true, 0, {}});
    size_t idx = 0;
    std::map<int, std::pair<ComplexSlice, CohomologyBasis>> cache;
    for (int n = deg_lo; n <= deg_hi; ++n)
        for (int w = w_lo; w <= w_hi; ++w) {
            auto it = cache.find(w);
            if (it == cache.end()) {
                ComplexSlice slice = build_hochschild_slice(ctx, m, w, deg_lo, deg_hi);
                CohomologyBasis h = homology(slice, f, deg_lo, deg_hi);
                it = cache.emplace(w, std::make_pair(std::move(slice), std::move(h))).first;
            }
            const DegreeHomology& dh = it->second.second.at(n);
            HHEntry& e = out[idx++];
            e.dim = dh.dim;
            for (const auto& r : dh.representatives)
                e.representatives.push_back(
                    representative_string(ctx, it->second.first, n, r));
        }
    return out;
}

void require_central(const Context& ctx, const NcPoly& z) {
    const Field& f = ctx.field();
    for (size_t i = 0; i < ctx.pres().num_gens(); ++i) {
        NcPoly gi = nc_monomial(f, Word(1, static_cast<char>(i)), f.one());
        NcPoly comm = nc_mul(f, z, gi);
        nc_add_scaled(f, comm, f.from_int(-1), nc_mul(f, gi, z));
        if (!nc_is_zero(ctx.rw.normal_form(comm)))
            throw KoszulError("element is not central: [z, " +
                              ctx.pres().generators[i].name + "] != 0");
    }
}

std::vector<Matrix> central_action(const Context& ctx, const Coefficients& m, const NcPoly& z,
                                   const ComplexSlice& slice_from, const CohomologyBasis& from,
                                   const ComplexSlice& slice_to, const CohomologyBasis& to) {
    const Field& f = ctx.field();
    require_central(ctx, z);
    NcPoly znf = ctx.rw.normal_form(z);
    std::vector<Matrix> out;
    for (const auto& dh : from.degrees) {
        int n = dh.degree;
        const DegreeHomology& th = to.at(n);
        Matrix mat(f, th.dim, dh.dim);
        const auto& fbasis = slice_from.basis[static_cast<size_t>(n - slice_from.lo)];
        for (size_t j = 0; j < dh.representatives.size(); ++j) {
            Vec img = zero_vec(f, slice_to.dim(n));
            const Vec& rep = dh.representatives[j];
            for (size_t i = 0; i < rep.size(); ++i) {
                if (f.is_zero(rep[i])) continue;
                const SliceBasisElt& e = fbasis[i];
                if (m.kind == CoeffKind::Regular) {
                    NcPoly p = ctx.rw.normal_form(
                        nc_mul(f, nc_monomial(f, e.a, rep[i]), znf));
                    for (const auto& [w, c] : p) {
                        long t = slice_to.index_of(n, {e.lam, w, Word(), 0});
                        if (t < 0) throw KoszulError("central action left the slice");
                        f.add_in_place(img[static_cast<size_t>(t)], c);
                    }
                } else if (m.kind == CoeffKind::Enveloping) {
                    NcPoly p = ctx.rw.normal_form(
                        nc_mul(f, znf, nc_monomial(f, e.a, rep[i])));
                    for (const auto& [w, c] : p) {
                        long t = slice_to.index_of(n, {e.lam, w, e.b, 0});
                        if (t < 0) throw KoszulError("central action left the slice");
                        f.add_in_place(img[static_cast<size_t>(t)], c);
                    }
                } else {
                    const Bimodule& B = *m.bim;
                    // action of z on the module through the left matrices
                    Vec mv = unit_vec(f, B.dim, e.mod);
                    Vec acc = zero_vec(f, B.dim);
                    for (const auto& [w, c] : znf) {
                        Vec cur = mv;
                        for (auto it = w.rbegin(); it != w.rend(); ++it)
                            cur = B.left[static_cast<size_t>(*it)].apply(cur);
                        vec_add_scaled(f, acc, c, cur);
                    }
                    for (size_t b = 0; b < B.dim; ++b) {
                        if (f.is_zero(acc[b])) continue;
                        long t = slice_to.index_of(n, {e.lam, Word(), Word(), b});
                        if (t < 0) throw KoszulError("central action left the slice");
                        f.add_in_place(img[static_cast<size_t>(t)], f.mul(rep[i], acc[b]));
                    }
                }
            }
            ClassCoords cc = reduce_cocycle(f, slice_to, th, img);
            for (size_t r = 0; r < th.dim; ++r) mat.at(r, j) = cc.on_representatives[r];
        }
        out.push_back(std::move(mat));
    }
    return out;
}

// --- resolution ------------------------------------------------------------

ResolutionSlice build_resolution_slice(const Context& ctx, int weight) {
    if (!ctx.vreport.weighted)
        throw KoszulError("resolution slices need a weight-homogeneous presentation");
    const Field& f = ctx.field();
    const CurvedDualTable& t = ctx.dual;
    ResolutionSlice rs;
    rs.weight = weight;
    rs.max_n = t.top_degree;

    for (size_t n = 0; n <= rs.max_n; ++n) {
        std::vector<ResBasisElt> bs;
        for (size_t a = 0; a < t.dim(n); ++a) {
            int cw = -t.weights[n][a];  // weight of the (Lambda^*)^{-n} basis vector
            int rem = weight - cw;
            if (rem < 0) continue;
            for (int wl = 0; wl <= rem; ++wl) {
                auto ls = ctx.rw.normal_words_of_weight(wl);
                auto rsw = ctx.rw.normal_words_of_weight(rem - wl);
                for (const auto& L : ls)
                    for (const auto& R : rsw) bs.push_back({L, a, R});
            }
        }
        rs.basis.push_back(std::move(bs));
    }

    // index maps per degree
    std::vector<std::map<std::tuple<Word, size_t, Word>, size_t>> index(rs.max_n + 1);
    for (size_t n = 0; n <= rs.max_n; ++n)
        for (size_t i = 0; i < rs.basis[n].size(); ++i)
            index[n].emplace(std::make_tuple(rs.basis[n][i].left, rs.basis[n][i].dual,
                                             rs.basis[n][i].right),
                             i);

    const size_t g = ctx.pres().num_gens();
    for (size_t n = 1; n <= rs.max_n; ++n) {
        std::map<std::pair<size_t, size_t>, FieldElement> acc;  // (row=target, col=source)
        auto add = [&](size_t row, size_t col, const FieldElement& c) {
            if (f.is_zero(c)) return;
            auto [it, fresh] = acc.emplace(std::make_pair(row, col), c);
            if (!fresh) {
                f.add_in_place(it->second, c);
                if (f.is_zero(it->second)) acc.erase(it);
            }
        };
        auto target_at = [&](const Word& L, size_t dualidx, const Word& R) -> size_t {
            auto it = index[n - 1].find(std::make_tuple(L, dualidx, R));
            if (it == index[n - 1].end())
                throw KoszulError("resolution differential left the slice");
            return it->second;
        };
        FieldElement par = (n % 2 == 0) ? f.one() : f.from_int(-1);
        for (size_t s = 0; s < rs.basis[n].size(); ++s) {
            const ResBasisElt& e = rs.basis[n][s];
            // term A: x (x) d_{Lambda^*}(phi) (x) y = -(-1)^n D^{(n-1)}[a,c]
            if (n >= 1 && t.dim(n - 1) > 0) {
                const Matrix& D = t.differential[n - 1];
                for (size_t c = 0; c < t.dim(n - 1); ++c) {
                    const FieldElement& dc = D.at(e.dual, c);
                    if (f.is_zero(dc)) continue;
                    add(target_at(e.left, c, e.right), s, f.neg(f.mul(par, dc)));
                }
            }
            // terms B and C: -(sum_i x (x) lambda_i phi (x) x_i y)
            //                +(-1)^n sum_i x x_i (x) phi lambda_i (x) y
            // phi^{n-1}_c . lambda_i and lambda_i . phi^{n-1}_c; at n = 1 the
            // products are against the unit, S^{(0,1)} = S^{(1,0)} = delta.
            auto Sl = t.product.find({n - 1, 1});
            auto Sr = t.product.find({1, n - 1});
            auto right_mul = [&](size_t c, size_t i) -> FieldElement {
                if (n == 1) return i == e.dual ? f.one() : f.zero();
                return Sl->second[c][i][e.dual];
            };
            auto left_mul = [&](size_t c, size_t i) -> FieldElement {
                if (n == 1) return i == e.dual ? f.one() : f.zero();
                return Sr->second[i][c][e.dual];
            };
            bool have_products = (n == 1) || (Sl != t.product.end() && Sr != t.product.end());
            for (size_t i = 0; i < g && have_products; ++i) {
                // lambda_i . beta^n_a = sum_c -S^{(n-1,1)}[c][i][a] beta^{n-1}_c
                {
                    NcPoly xy = ctx.rw.normal_form_word(static_cast<char>(i) + e.right);
                    for (size_t c = 0; c < t.dim(n - 1); ++c) {
                        FieldElement sc = right_mul(c, i);
                        if (f.is_zero(sc)) continue;
                        // overall: -( -sc ) = +sc
                        for (const auto& [w, wc] : xy)
                            add(target_at(e.left, c, w), s, f.mul(sc, wc));
                    }
                }
                // beta^n_a . lambda_i = sum_c S^{(1,n-1)}[i][c][a] beta^{n-1}_c
                {
                    NcPoly xx = ctx.rw.normal_form_word(e.left + static_cast<char>(i));
                    for (size_t c = 0; c < t.dim(n - 1); ++c) {
                        FieldElement sc = left_mul(c, i);
                        if (f.is_zero(sc)) continue;
                        for (const auto& [w, wc] : xx)
                            add(target_at(w, c, e.right), s, f.mul(par, f.mul(sc, wc)));
                    }
                }
            }
        }
        SparseMatrix sm;
        sm.rows = rs.basis[n - 1].size();
        sm.cols = rs.basis[n].size();
        sm.entries.resize(sm.rows);
        for (const auto& [rc, v] : acc) sm.entries[rc.first].emplace_back(rc.second, v);
        rs.d.push_back(std::move(sm));
    }
    return rs;
}

std::vector<ResolutionWeightReport> verify_resolution(const Context& ctx, int max_weight) {
    const Field& f = ctx.field();
    std::vector<ResolutionWeightReport> out;
    for (int w = 0; w <= max_weight; ++w) {
        ResolutionSlice rs = build_resolution_slice(ctx, w);
        ResolutionWeightReport rep;
        rep.weight = w;
        rep.d_squared_zero = true;
        for (size_t n = 2; n <= rs.max_n; ++n)
            if (!sparse_product_is_zero(f, rs.d[n - 2], rs.d[n - 1]))
                rep.d_squared_zero = false;
        std::vector<size_t> ranks(rs.max_n + 2, 0);
        for (size_t n = 1; n <= rs.max_n; ++n) ranks[n] = sparse_rank(f, rs.d[n - 1]);
        rep.a_dim = ctx.rw.normal_words_of_weight(w).size();
        rep.h0_dim = rs.basis[0].size() - ranks[1];
        rep.negative_dims.clear();
        for (size_t n = 1; n <= rs.max_n; ++n)
            rep.negative_dims.push_back(rs.basis[n].size() - ranks[n] - ranks[n + 1]);
        rep.pass = rep.d_squared_zero && rep.h0_dim == rep.a_dim;
        for (size_t d : rep.negative_dims)
            if (d != 0) rep.pass = false;
        out.push_back(std::move(rep));
    }
    return out;
}

// --- truncated estimates ----------------------------------------------------

namespace {

std::vector<long> truncated_dims(const Context& ctx, size_t D, int deg_lo, int deg_hi) {
    const Field& f = ctx.field();
    const CurvedDualTable& t = ctx.dual;
    int lo = std::max(0, deg_lo - 1);
    int hi = deg_hi + 1;
    if (t.range_capped && static_cast<size_t>(hi) >= t.dims.size())
        throw KoszulError("requested degrees exceed the computed dual range; raise "
                          "--max-dual-degree");
    std::vector<Word> words = ctx.rw.normal_words_up_to_length(D);
    std::vector<std::vector<SliceBasisElt>> basis;
    for (int n = lo; n <= hi; ++n) {
        std::vector<SliceBasisElt> bs;
        for (size_t a = 0; a < t.dim(static_cast<size_t>(n)); ++a)
            for (const auto& w : words) bs.push_back({a, w, Word(), 0});
        basis.push_back(std::move(bs));
    }
    SliceBuilder sb{ctx, f};
    auto act_left = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        for (const auto& [w, c] : ctx.rw.normal_form_word(static_cast<char>(i) + e.a))
            if (w.size() <= D) out.push_back({{0, w, Word(), 0}, c});
        return out;
    };
    auto act_right = [&](size_t i, const SliceBasisElt& e) {
        std::vector<std::pair<SliceBasisElt, FieldElement>> out;
        for (const auto& [w, c] : ctx.rw.normal_form_word(e.a + static_cast<char>(i)))
            if (w.size() <= D) out.push_back({{0, w, Word(), 0}, c});
        return out;
    };
    std::vector<Matrix> d;
    for (int n = lo; n < hi; ++n) {
        const auto& target = basis[static_cast<size_t>(n + 1 - lo)];
        TargetIndex ti = index_basis(target);
        d.push_back(assemble(
            f, basis[static_cast<size_t>(n - lo)], target, ti,
            [&](const SliceBasisElt& src) { return sb.apply_d(n, src, act_left, act_right); },
            true));
    }
    std::vector<long> dims;
    for (int n = deg_lo; n <= deg_hi; ++n) {
        size_t kd = basis[static_cast<size_t>(n - lo)].size() -
                    d[static_cast<size_t>(n - lo)].rank();
        size_t bd = (n - 1 >= lo) ? d[static_cast<size_t>(n - 1 - lo)].rank() : 0;
        dims.push_back(static_cast<long>(kd) - static_cast<long>(bd));
    }
    return dims;
}

}  // namespace

TruncatedEstimate truncated_estimate(const Context& ctx, const Coefficients& m, size_t D,
                                     int deg_lo, int deg_hi) {
    if (m.kind != CoeffKind::Regular)
        throw KoszulError("truncated estimates support regular coefficients only");
    TruncatedEstimate est;
    est.bound = D;
    est.deg_lo = deg_lo;
    est.deg_hi = deg_hi;
    est.dims = truncated_dims(ctx, D, deg_lo, deg_hi);
    std::vector<long> next = truncated_dims(ctx, D + 1, deg_lo, deg_hi);
    for (size_t i = 0; i < est.dims.size(); ++i) est.stable.push_back(est.dims[i] == next[i]);
    return est;
}

}  // namespace koszul
