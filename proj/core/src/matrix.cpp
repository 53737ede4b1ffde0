#include "koszul/matrix.hpp"

#include <algorithm>
#include <list>
#include <map>

namespace koszul {

Matrix::Matrix(Field f, size_t rows, size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

Matrix Matrix::identity(const Field& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_) throw KoszulError("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const FieldElement& a = at(i, k);
            if (field_.is_zero(a)) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const FieldElement& b = o.at(k, j);
                if (field_.is_zero(b)) continue;
                field_.add_mul_in_place(r.at(i, j), a, b);
            }
        }
    return r;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw KoszulError("matrix apply shape mismatch");
    Vec r(rows_, field_.zero());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            const FieldElement& a = at(i, j);
            if (field_.is_zero(a) || field_.is_zero(v[j])) continue;
            field_.add_mul_in_place(r[i], a, v[j]);
        }
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& e : data_)
        if (!field_.is_zero(e)) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Vec Matrix::row(size_t r) const {
    Vec v(cols_, field_.zero());
    for (size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

void Matrix::set_row(size_t r, const Vec& v) {
    for (size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
}

Matrix Matrix::rref(std::vector<size_t>* pivot_cols) const {
    Matrix m = *this;
    const Field& f = field_;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t p = r;
        while (p < rows_ && f.is_zero(m.at(p, c))) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(r, j));
        FieldElement inv = f.inv(m.at(r, c));
        for (size_t j = c; j < cols_; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            FieldElement s = f.neg(m.at(i, c));
            for (size_t j = c; j < cols_; ++j) f.add_mul_in_place(m.at(i, j), s, m.at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivot_cols) *pivot_cols = pivots;
    return m;
}

size_t Matrix::rank() const {
    std::vector<size_t> pivots;
    rref(&pivots);
    return pivots.size();
}

std::vector<Vec> Matrix::kernel_basis() const {
    std::vector<size_t> pivots;
    Matrix e = rref(&pivots);
    const Field& f = field_;
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols_, f.zero());
        v[free] = f.one();
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = f.neg(e.at(k, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec zero_vec(const Field& f, size_t n) { return Vec(n, f.zero()); }

bool vec_is_zero(const Field& f, const Vec& v) {
    for (const auto& e : v)
        if (!f.is_zero(e)) return false;
    return true;
}

Vec vec_sub(const Field& f, const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = f.sub(r[i], b[i]);
    return r;
}

void vec_add_scaled(const Field& f, Vec& a, const FieldElement& s, const Vec& b) {
    if (f.is_zero(s)) return;
    for (size_t i = 0; i < a.size(); ++i)
        if (!f.is_zero(b[i])) f.add_mul_in_place(a[i], s, b[i]);
}

std::optional<Vec> Echelon::insert(Vec v) {
    v = reduce(std::move(v));
    size_t p = 0;
    while (p < v.size() && field_.is_zero(v[p])) ++p;
    if (p == v.size()) return std::nullopt;
    FieldElement inv = field_.inv(v[p]);
    for (auto& e : v) e = field_.mul(e, inv);
    // keep rows sorted by pivot and fully reduced against each other
    for (auto& r : rows_)
        if (!field_.is_zero(r[p])) {
            FieldElement s = field_.neg(r[p]);
            vec_add_scaled(field_, r, s, v);
        }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, v);
    pivots_.insert(pivots_.begin() + pos, p);
    return v;
}

Vec Echelon::reduce(Vec v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
        const FieldElement& c = v[pivots_[k]];
        if (field_.is_zero(c)) continue;
        FieldElement s = field_.neg(c);
        vec_add_scaled(field_, v, s, rows_[k]);
    }
    return v;
}

bool Echelon::contains(const Vec& v) const { return vec_is_zero(field_, reduce(v)); }

std::vector<Vec> rref_rows(const Field& f, const std::vector<Vec>& vectors) {
    if (vectors.empty()) return {};
    Matrix m(f, vectors.size(), vectors[0].size());
    for (size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
    std::vector<size_t> pivots;
    Matrix e = m.rref(&pivots);
    std::vector<Vec> rows;
    for (size_t i = 0; i < pivots.size(); ++i) rows.push_back(e.row(i));
    return rows;
}

SpanReduction reduce_mod_span(const Field& f, const Vec& v, const std::vector<Vec>& basis) {
    for (const auto& b : basis)
        if (b.size() != v.size()) throw KoszulError("reduce_mod_span: dimension mismatch");
    // Echelonize the basis while tracking how each echelon row combines the
    // original vectors, then reduce v with the same bookkeeping.
    struct TrackedRow {
        Vec row;
        Vec comb;  // coordinates over the original basis
        size_t pivot;
    };
    std::vector<TrackedRow> ech;
    auto reduce_tracked = [&](Vec& w, Vec& comb) {
        for (const auto& tr : ech) {
            const FieldElement& c = w[tr.pivot];
            if (f.is_zero(c)) continue;
            FieldElement s = f.neg(c);
            vec_add_scaled(f, w, s, tr.row);
            vec_add_scaled(f, comb, s, tr.comb);
        }
    };
    for (size_t i = 0; i < basis.size(); ++i) {
        Vec w = basis[i];
        Vec comb = zero_vec(f, basis.size());
        comb[i] = f.one();
        reduce_tracked(w, comb);
        size_t p = 0;
        while (p < w.size() && f.is_zero(w[p])) ++p;
        if (p == w.size()) continue;  // dependent basis vector
        FieldElement inv = f.inv(w[p]);
        for (auto& e : w) e = f.mul(e, inv);
        for (auto& e : comb) e = f.mul(e, inv);
        ech.push_back({std::move(w), std::move(comb), p});
        std::sort(ech.begin(), ech.end(),
                  [](const TrackedRow& a, const TrackedRow& b) { return a.pivot < b.pivot; });
    }
    Vec w = v;
    Vec comb = zero_vec(f, basis.size());
    reduce_tracked(w, comb);
    SpanReduction out;
    if (vec_is_zero(f, w)) {
        out.in_span = true;
        for (auto& e : comb) e = f.neg(e);  // v - sum c_i b_i reduced to 0
        out.coefficients = std::move(comb);
    } else {
        out.in_span = false;
        out.residual = std::move(w);
    }
    return out;
}

size_t sparse_rank(const Field& f, const SparseMatrix& m) {
    using Row = std::vector<std::pair<size_t, FieldElement>>;
    // bucket rows by leading column
    std::map<size_t, std::vector<Row>> buckets;
    for (const auto& r : m.entries)
        if (!r.empty()) buckets[r.front().first].push_back(r);
    auto add_scaled = [&](const Row& a, const FieldElement& s, const Row& b) {
        // a + s*b, merged by column
        Row out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, f.mul(s, b[j].second));
                ++j;
            } else {
                FieldElement v = a[i].second;
                f.add_mul_in_place(v, s, b[j].second);
                if (!f.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    };
    size_t rank = 0;
    while (!buckets.empty()) {
        auto it = buckets.begin();
        size_t col = it->first;
        std::vector<Row> rows = std::move(it->second);
        buckets.erase(it);
        // deterministic pivot: shortest row, ties by insertion order
        size_t best = 0;
        for (size_t i = 1; i < rows.size(); ++i)
            if (rows[i].size() < rows[best].size()) best = i;
        Row pivot = std::move(rows[best]);
        rows.erase(rows.begin() + best);
        ++rank;
        FieldElement pinv = f.inv(pivot.front().second);
        for (auto& r : rows) {
            FieldElement s = f.neg(f.mul(r.front().second, pinv));
            Row nr = add_scaled(r, s, pivot);
            // leading entry at `col` cancels by construction
            while (!nr.empty() && nr.front().first == col) nr.erase(nr.begin());
            if (!nr.empty()) buckets[nr.front().first].push_back(std::move(nr));
        }
    }
    return rank;
}

bool sparse_product_is_zero(const Field& f, const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw KoszulError("sparse product shape mismatch");
    for (size_t i = 0; i < a.rows; ++i) {
        std::map<size_t, FieldElement> acc;
        for (const auto& [k, va] : a.entries[i])
            for (const auto& [j, vb] : b.entries[k]) {
                auto [it, fresh] = acc.emplace(j, f.zero());
                f.add_mul_in_place(it->second, va, vb);
                (void)fresh;
            }
        for (const auto& [j, v] : acc)
            if (!f.is_zero(v)) return false;
    }
    return true;
}

}  // namespace koszul
