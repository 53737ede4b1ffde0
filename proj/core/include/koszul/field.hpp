#pragma once

#include <gmpxx.h>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

using Rational = mpq_class;

struct KoszulError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact scalar: coordinates in the power basis 1, t, ..., t^{d-1} of the
/// ambient field. Over Q the vector has length 1. Elements are kept reduced
/// (fractions canonical, number-field coordinates reduced mod the modulus),
/// so operator== is semantic equality within a fixed field.
struct FieldElement {
    std::vector<Rational> c;

    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool operator!=(const FieldElement& o) const { return c != o.c; }
};

/// Q or Q[t]/(m(t)) with m monic of degree >= 1. Irreducibility of m is the
/// caller's responsibility; a failed inversion surfaces as an error.
/// Cheap to copy; all arithmetic routes through this object.
class Field {
public:
    static Field rationals();
    /// modulus coefficients m_0, ..., m_d with m_d == 1, d >= 1.
    static Field number_field(std::vector<Rational> modulus);

    bool is_rationals() const { return modulus_ == nullptr; }
    size_t degree() const { return modulus_ ? modulus_->size() - 1 : 1; }
    const std::vector<Rational>& modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement t() const;  // class of t; error over Q
    FieldElement from_int(long n) const;
    FieldElement from_rational(const Rational& q) const;

    bool is_zero(const FieldElement& a) const;
    bool eq(const FieldElement& a, const FieldElement& b) const { return a == b; }

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;

    void add_in_place(FieldElement& a, const FieldElement& b) const;
    /// a += s*b, the elimination kernel's inner operation.
    void add_mul_in_place(FieldElement& a, const FieldElement& s, const FieldElement& b) const;

    /// Canonical text form: "0", "5", "-1/3", "t", "1-t+t^2", ...
    std::string str(const FieldElement& a) const;
    std::string name() const;  // "Q" or "Q[t]/(m)"

    bool same_field(const Field& o) const { return modulus_ == o.modulus_ || name() == o.name(); }

private:
    Field() = default;
    std::shared_ptr<const std::vector<Rational>> modulus_;  // null for Q

    void reduce(std::vector<Rational>& v) const;
};

}  // namespace koszul
