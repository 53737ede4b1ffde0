#include "koszul/ncpoly.hpp"

namespace koszul {

bool deglex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void nc_add_term(const Field& f, NcPoly& p, const Word& w, const FieldElement& c) {
    if (f.is_zero(c)) return;
    auto [it, fresh] = p.emplace(w, c);
    if (!fresh) {
        f.add_in_place(it->second, c);
        if (f.is_zero(it->second)) p.erase(it);
    }
}

void nc_add(const Field& f, NcPoly& p, const NcPoly& q) {
    for (const auto& [w, c] : q) nc_add_term(f, p, w, c);
}

void nc_add_scaled(const Field& f, NcPoly& p, const FieldElement& s, const NcPoly& q) {
    if (f.is_zero(s)) return;
    for (const auto& [w, c] : q) nc_add_term(f, p, w, f.mul(s, c));
}

NcPoly nc_scale(const Field& f, const FieldElement& s, const NcPoly& p) {
    NcPoly r;
    if (f.is_zero(s)) return r;
    for (const auto& [w, c] : p) r.emplace(w, f.mul(s, c));
    return r;
}

NcPoly nc_mul(const Field& f, const NcPoly& a, const NcPoly& b) {
    NcPoly r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) nc_add_term(f, r, wa + wb, f.mul(ca, cb));
    return r;
}

NcPoly nc_monomial(const Field& f, const Word& w, const FieldElement& c) {
    NcPoly p;
    nc_add_term(f, p, w, c);
    return p;
}

bool nc_is_zero(const NcPoly& p) { return p.empty(); }

bool nc_equal(const Field& f, const NcPoly& a, const NcPoly& b) {
    (void)f;
    return a == b;
}

}  // namespace koszul
