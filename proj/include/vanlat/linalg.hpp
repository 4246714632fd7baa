#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "vanlat/matrix.hpp"

namespace vanlat {

// In-place reduced row echelon form; returns pivot column indices in order.
inline std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        m.scale_row(r, 1 / m(r, c));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            m.add_row(i, r, -m(i, c));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(QMat m) { return rref(m).size(); }

// Basis of { x : m x = 0 }, one vector per free column, deterministic
// (free columns in increasing order, free coordinate set to 1).
inline std::vector<QVec> kernel_basis(QMat m) {
    std::size_t n = m.cols();
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVec v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, or nullopt if inconsistent.
inline std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if (m.rows() != b.size()) throw std::invalid_argument("solve: shape");
    QMat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    QVec x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

// Row-echelon span of a set of vectors in Q^k. Supports incremental
// insertion, membership, and reduction to canonical coset representatives
// whose pivot coordinates vanish. Pivot choice is the first nonzero
// coordinate, so results are deterministic for a fixed insertion order.
class SpanReducer {
  public:
    explicit SpanReducer(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<QVec>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivs_; }

    QVec reduce(QVec v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (v[pivs_[r]] == 0) continue;
            Rat f = v[pivs_[r]];
            for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * rows_[r][j];
        }
        return v;
    }

    bool contains(const QVec& v) const { return is_zero(reduce(v)); }

    // true iff v was independent and the span grew
    bool add(const QVec& v) {
        QVec r = reduce(v);
        std::size_t p = 0;
        while (p < ambient_ && r[p] == 0) ++p;
        if (p == ambient_) return false;
        Rat f = 1 / r[p];
        for (std::size_t j = 0; j < ambient_; ++j) r[j] *= f;
        // keep earlier rows reduced against the new pivot
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i][p] == 0) continue;
            Rat g = rows_[i][p];
            for (std::size_t j = 0; j < ambient_; ++j) rows_[i][j] -= g * r[j];
        }
        rows_.push_back(std::move(r));
        pivs_.push_back(p);
        return true;
    }

    // coordinates not hit by a pivot, increasing; they index the canonical
    // complement used for quotient coordinates
    std::vector<std::size_t> complement() const {
        std::vector<bool> hit(ambient_, false);
        for (std::size_t p : pivs_) hit[p] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!hit[j]) out.push_back(j);
        return out;
    }

    // image of v in the quotient, expressed in the complement coordinates
    QVec quotient_coords(const QVec& v) const {
        QVec r = reduce(v);
        QVec out;
        for (std::size_t j : complement()) out.push_back(r[j]);
        return out;
    }

  private:
    std::size_t ambient_;
    std::vector<QVec> rows_;
    std::vector<std::size_t> pivs_;
};

inline SpanReducer span_of(const std::vector<QVec>& vectors, std::size_t ambient) {
    SpanReducer s(ambient);
    for (const QVec& v : vectors) s.add(v);
    return s;
}

}  // namespace vanlat
