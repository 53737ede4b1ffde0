#pragma once

#include <optional>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

using Vec = std::vector<FieldElement>;

/// Dense exact matrix. Row-major; entries always reduced. Slice matrices at
/// desk scale stay below a few hundred rows, so plain exact elimination with
/// first-nonzero pivoting (deterministic) is the whole story here.
class Matrix {
public:
    Matrix(Field f, size_t rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    FieldElement& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    static Matrix identity(const Field& f, size_t n);
    Matrix mul(const Matrix& o) const;
    Vec apply(const Vec& v) const;  // matrix * column vector
    bool is_zero() const;
    bool operator==(const Matrix& o) const;

    Vec row(size_t r) const;
    void set_row(size_t r, const Vec& v);

    size_t rank() const;
    /// Basis of the right null space; deterministic (free columns in
    /// ascending order, pivot entries back-substituted).
    std::vector<Vec> kernel_basis() const;
    /// Reduced row echelon form; pivot columns reported in order.
    Matrix rref(std::vector<size_t>* pivot_cols = nullptr) const;

private:
    Field field_;
    size_t rows_, cols_;
    std::vector<FieldElement> data_;
};

struct SpanReduction {
    bool in_span = false;
    Vec coefficients;  // on the original basis, when in_span
    Vec residual;      // nonzero witness outside the span, when !in_span
};

/// Reduce v against span(basis). Exact: returned coefficients satisfy
/// v == sum c_i basis_i; otherwise residual = v - (projection found by
/// elimination) lies outside the span. Throws on dimension mismatch.
SpanReduction reduce_mod_span(const Field& f, const Vec& v, const std::vector<Vec>& basis);

/// Row-echelon basis of the span of the given vectors (RREF rows, zero rows
/// dropped). Deterministic, and weight-homogeneous inputs stay homogeneous.
std::vector<Vec> rref_rows(const Field& f, const std::vector<Vec>& vectors);

/// Incremental echelon container used for rank bookkeeping and for picking
/// quotient representatives deterministically.
class Echelon {
public:
    explicit Echelon(Field f) : field_(std::move(f)) {}

    /// Reduces v against the rows held so far; if a nonzero residual is left
    /// it is normalized, inserted, and returned. Returns nullopt when v was
    /// already in the span.
    std::optional<Vec> insert(Vec v);
    /// Reduce without inserting.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;
    size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }

private:
    Field field_;
    std::vector<Vec> rows_;        // each with leading 1, sorted by pivot
    std::vector<size_t> pivots_;
};

// Small conveniences used across the slice builders.
Vec zero_vec(const Field& f, size_t n);
bool vec_is_zero(const Field& f, const Vec& v);
Vec vec_sub(const Field& f, const Vec& a, const Vec& b);
void vec_add_scaled(const Field& f, Vec& a, const FieldElement& s, const Vec& b);

/// Sparse row representation for the resolution slices, where matrices reach
/// a few hundred rows with a handful of entries per column. Rank only;
/// deterministic pivot choice (shortest candidate row, then lowest index).
struct SparseMatrix {
    size_t rows = 0, cols = 0;
    // per row: sorted (col, value) pairs
    std::vector<std::vector<std::pair<size_t, FieldElement>>> entries;
};

size_t sparse_rank(const Field& f, const SparseMatrix& m);
bool sparse_product_is_zero(const Field& f, const SparseMatrix& a, const SparseMatrix& b);

}  // namespace koszul
