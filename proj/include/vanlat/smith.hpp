#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vanlat/matrix.hpp"

namespace vanlat {

// u * a * w == d with u, w unimodular and d diagonal, d(i,i) >= 0,
// d(i,i) | d(i+1,i+1).
struct SmithDecomposition {
    IMat u, d, w;

    std::vector<Int> divisors() const {
        std::size_t n = std::min(d.rows(), d.cols());
        std::vector<Int> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
        return out;
    }
};

namespace detail {

// smallest nonzero |entry| in the submatrix starting at (s,s); ties broken
// by lowest (row, col)
inline bool locate_pivot(const IMat& m, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < m.rows(); ++i)
        for (std::size_t j = s; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            Int a = abs(m(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IMat& a) {
    SmithDecomposition s{IMat::identity(a.rows()), a, IMat::identity(a.cols())};
    IMat& d = s.d;
    std::size_t steps = std::min(a.rows(), a.cols());
    for (std::size_t k = 0; k < steps; ++k) {
        for (;;) {
            std::size_t pi = 0, pj = 0;
            if (!detail::locate_pivot(d, k, pi, pj)) {
                // remaining block is zero; earlier diagonal entries stay put
                for (std::size_t i = k; i < steps; ++i)
                    if (d(i, i) != 0) throw std::logic_error("smith: zero block");
                return s;
            }
            if (pi != k) {
                d.swap_rows(k, pi);
                s.u.swap_rows(k, pi);
            }
            if (pj != k) {
                d.swap_cols(k, pj);
                s.w.swap_cols(k, pj);
            }
            bool dirty = false;
            for (std::size_t i = k + 1; i < d.rows(); ++i) {
                if (d(i, k) == 0) continue;
                Int q = d(i, k) / d(k, k);  // truncated, |remainder| < |pivot|
                if (q != 0) {
                    d.add_row(i, k, -q);
                    s.u.add_row(i, k, -q);
                }
                if (d(i, k) != 0) dirty = true;
            }
            for (std::size_t j = k + 1; j < d.cols(); ++j) {
                if (d(k, j) == 0) continue;
                Int q = d(k, j) / d(k, k);
                if (q != 0) {
                    d.add_col(j, k, -q);
                    s.w.add_col(j, k, -q);
                }
                if (d(k, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // pivot must divide the rest of the block; if not, fold the
            // offending row in and reduce again
            bool divides = true;
            for (std::size_t i = k + 1; i < d.rows() && divides; ++i)
                for (std::size_t j = k + 1; j < d.cols() && divides; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        d.add_row(k, i, 1);
                        s.u.add_row(k, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (d(k, k) < 0) {
            d.scale_row(k, Int(-1));
            s.u.scale_row(k, Int(-1));
        }
    }
    return s;
}

// Solve a x = b over the integers. Either a solution or the index of the
// first diagonal constraint of the Smith form that obstructs (divisibility,
// or a nonzero residue against a zero row).
struct IntegralSolution {
    std::optional<IVec> x;
    std::optional<std::size_t> obstruction;
};

inline IntegralSolution integral_membership(const IMat& a, const IVec& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("integral_membership: shape");
    SmithDecomposition s = smith_normal_form(a);
    IVec c = s.u * b;
    std::size_t diag = std::min(a.rows(), a.cols());
    IVec y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int di = (i < diag) ? s.d(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) return {std::nullopt, i};
        } else {
            if (c[i] % di != 0) return {std::nullopt, i};
            y[i] = c[i] / di;
        }
    }
    return {s.w * y, std::nullopt};
}

inline bool is_unimodular(const IMat& m) {
    if (m.rows() != m.cols()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

}  // namespace vanlat
