#include "koszul/field.hpp"

#include <algorithm>
#include <sstream>

namespace koszul {

namespace {

// Dense univariate polynomial helpers over Q, coefficients ascending.
// Used only for number-field reduction and inversion.

void poly_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

// a mod m, m monic
std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& m) {
    poly_trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        Rational lead = a.back();
        size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i < m.size(); ++i) a[shift + i] -= lead * m[i];
        poly_trim(a);
    }
    return a;
}

std::vector<Rational> poly_sub_scaled(std::vector<Rational> a, const Rational& s,
                                      const std::vector<Rational>& b, size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= s * b[i];
    poly_trim(a);
    return a;
}

// Extended gcd: returns g and u with u*a == g mod m (only the a-cofactor is needed).
void poly_xgcd_mod(const std::vector<Rational>& a, const std::vector<Rational>& m,
                   std::vector<Rational>& g, std::vector<Rational>& u) {
    std::vector<Rational> r0 = m, r1 = a;
    std::vector<Rational> u0 = {}, u1 = {Rational(1)};
    poly_trim(r1);
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<Rational> q;
        std::vector<Rational> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rational(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rational c = rem.back() / r1.back();
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                rem = poly_sub_scaled(rem, c, r1, shift);
            }
        }
        std::vector<Rational> u2 = u0;
        // u2 = u0 - q*u1
        std::vector<Rational> qu1 = poly_mul(q, u1);
        if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rational(0));
        for (size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
        poly_trim(u2);
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    g = r0;
    u = u0;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace

Field Field::rationals() { return Field(); }

Field Field::number_field(std::vector<Rational> modulus) {
    poly_trim(modulus);
    if (modulus.size() < 2) throw KoszulError("number-field modulus must have degree >= 1");
    if (modulus.back() != 1) throw KoszulError("number-field modulus must be monic");
    Field f;
    f.modulus_ = std::make_shared<const std::vector<Rational>>(std::move(modulus));
    return f;
}

const std::vector<Rational>& Field::modulus() const {
    if (!modulus_) throw KoszulError("field Q has no modulus");
    return *modulus_;
}

void Field::reduce(std::vector<Rational>& v) const {
    if (!modulus_) {
        v.resize(1, Rational(0));
        return;
    }
    v = poly_mod(std::move(v), *modulus_);
    v.resize(degree(), Rational(0));
}

FieldElement Field::zero() const { return FieldElement{std::vector<Rational>(degree(), Rational(0))}; }

FieldElement Field::one() const {
    FieldElement e = zero();
    e.c[0] = 1;
    return e;
}

FieldElement Field::t() const {
    if (is_rationals() || degree() < 2) throw KoszulError("scalar t needs a number field of degree >= 2");
    FieldElement e = zero();
    e.c[1] = 1;
    return e;
}

FieldElement Field::from_int(long n) const {
    FieldElement e = zero();
    e.c[0] = n;
    return e;
}

FieldElement Field::from_rational(const Rational& q) const {
    FieldElement e = zero();
    e.c[0] = q;
    return e;
}

bool Field::is_zero(const FieldElement& a) const {
    for (const auto& x : a.c)
        if (x != 0) return false;
    return true;
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

FieldElement Field::neg(const FieldElement& a) const {
    FieldElement r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    if (is_rationals()) return FieldElement{{a.c[0] * b.c[0]}};
    std::vector<Rational> p = poly_mul(a.c, b.c);
    reduce(p);
    return FieldElement{std::move(p)};
}

FieldElement Field::inv(const FieldElement& a) const {
    if (is_zero(a)) throw KoszulError("division by zero");
    if (is_rationals()) return FieldElement{{Rational(1) / a.c[0]}};
    std::vector<Rational> g, u;
    poly_xgcd_mod(a.c, *modulus_, g, u);
    if (g.size() != 1)
        throw KoszulError("element not invertible mod " + name() + " (modulus not irreducible?)");
    // u*a == g (constant), so a^{-1} = u/g
    for (auto& x : u) x /= g[0];
    reduce(u);
    return FieldElement{std::move(u)};
}

FieldElement Field::div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }

void Field::add_in_place(FieldElement& a, const FieldElement& b) const {
    for (size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
}

void Field::add_mul_in_place(FieldElement& a, const FieldElement& s, const FieldElement& b) const {
    if (is_rationals()) {
        a.c[0] += s.c[0] * b.c[0];
        return;
    }
    FieldElement sb = mul(s, b);
    add_in_place(a, sb);
}

std::string Field::str(const FieldElement& a) const {
    if (is_zero(a)) return "0";
    std::string out;
    bool first = true;
    for (size_t i = 0; i < a.c.size(); ++i) {
        const Rational& q = a.c[i];
        if (q == 0) continue;
        Rational mag = q < 0 ? Rational(-q) : q;
        std::string sign = q < 0 ? "-" : (first ? "" : "+");
        std::string term;
        if (i == 0) {
            term = rational_str(mag);
        } else {
            std::string pw = i == 1 ? "t" : "t^" + std::to_string(i);
            term = (mag == 1) ? pw : rational_str(mag) + "*" + pw;
        }
        out += sign + term;
        first = false;
    }
    return out;
}

std::string Field::name() const {
    if (is_rationals()) return "Q";
    FieldElement m{*modulus_};
    // print the modulus with the same term conventions as elements
    std::vector<Rational> full = *modulus_;
    std::string body;
    bool first = true;
    for (size_t i = 0; i < full.size(); ++i) {
        const Rational& q = full[i];
        if (q == 0) continue;
        Rational mag = q < 0 ? Rational(-q) : q;
        std::string sign = q < 0 ? "-" : (first ? "" : "+");
        std::string term;
        if (i == 0)
            term = rational_str(mag);
        else {
            std::string pw = i == 1 ? "t" : "t^" + std::to_string(i);
            term = (mag == 1) ? pw : rational_str(mag) + "*" + pw;
        }
        body += sign + term;
        first = false;
    }
    return "Q[t]/(" + body + ")";
}

}  // namespace koszul
