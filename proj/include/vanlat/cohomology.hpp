#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vanlat/linalg.hpp"
#include "vanlat/matrix.hpp"
#include "vanlat/presentation.hpp"
#include "vanlat/word.hpp"

namespace vanlat {

// One value per generator; a candidate element of Z^1(G, Q^dim).
struct Cocycle {
    std::vector<QVec> values;
};

inline void validate_shape(const Representation& rep, const Cocycle& c) {
    if (c.values.size() != rep.presentation.generators)
        throw std::invalid_argument("cocycle: one value per generator required");
    for (const QVec& v : c.values)
        if (v.size() != rep.dim) throw std::invalid_argument("cocycle: value dimension");
}

namespace detail {

// (m^e, I + m + ... + m^{e-1}), e >= 1, by binary splitting
inline std::pair<QMat, QMat> power_and_sum(const QMat& m, long long e) {
    if (e == 1) return {m, QMat::identity(m.rows())};
    if (e % 2 == 0) {
        auto [p, s] = power_and_sum(m, e / 2);
        return {p * p, s + p * s};
    }
    auto [p, s] = power_and_sum(m, e - 1);
    return {p * m, s + p};
}

}  // namespace detail

// phi(uv) = rho(u) phi(v) + phi(u) and phi(g^-1) = -rho(g)^-1 phi(g),
// extended over the letters of w. Linear in the generator values.
inline QVec extend_cocycle(const Representation& rep, const Cocycle& c, const FreeWord& w) {
    validate_shape(rep, c);
    validate_word(w, rep.presentation.generators);
    QVec value(rep.dim);
    QMat prefix = QMat::identity(rep.dim);
    for (const Letter& l : w) {
        bool pos = l.exp > 0;
        const QMat& m = pos ? rep.images[l.gen] : rep.inverses[l.gen];
        QVec base = pos ? c.values[l.gen] : Rat(-1) * (rep.inverses[l.gen] * c.values[l.gen]);
        auto [pw, sum] = detail::power_and_sum(m, pos ? l.exp : -l.exp);
        value = value + prefix * (sum * base);
        prefix = prefix * pw;
    }
    return value;
}

// Coefficient matrices K_i with extend(c, w) = sum_i K_i c_i for every
// cocycle c; the linearization of the extension in the generator values.
inline std::vector<QMat> extension_coefficients(const Representation& rep, const FreeWord& w) {
    validate_word(w, rep.presentation.generators);
    std::size_t n = rep.presentation.generators;
    std::vector<QMat> coef(n, QMat(rep.dim, rep.dim));
    QMat prefix = QMat::identity(rep.dim);
    for (const Letter& l : w) {
        if (l.exp > 0) {
            for (long long t = 0; t < l.exp; ++t) {
                coef[l.gen] = coef[l.gen] + prefix;
                prefix = prefix * rep.images[l.gen];
            }
        } else {
            for (long long t = 0; t < -l.exp; ++t) {
                prefix = prefix * rep.inverses[l.gen];
                coef[l.gen] = coef[l.gen] - prefix;
            }
        }
    }
    return coef;
}

inline QVec stack(const Cocycle& c) {
    QVec out;
    for (const QVec& v : c.values) out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline Cocycle unstack(const QVec& flat, std::size_t generators, std::size_t dim) {
    if (flat.size() != generators * dim) throw std::invalid_argument("unstack: size");
    Cocycle c;
    c.values.resize(generators);
    for (std::size_t i = 0; i < generators; ++i)
        c.values[i] = QVec(flat.begin() + i * dim, flat.begin() + (i + 1) * dim);
    return c;
}

// boundary of x: g |-> rho(g) x - x
inline Cocycle coboundary(const Representation& rep, const QVec& x) {
    Cocycle c;
    c.values.reserve(rep.presentation.generators);
    for (const QMat& m : rep.images) c.values.push_back(m * x - x);
    return c;
}

// nullopt if c satisfies every relator condition, else first failing index
inline std::optional<std::size_t> failing_relator(const Representation& rep, const Cocycle& c) {
    for (std::size_t i = 0; i < rep.presentation.relators.size(); ++i)
        if (!is_zero(extend_cocycle(rep, c, rep.presentation.relators[i]))) return i;
    return std::nullopt;
}

struct CohomologySpaces {
    std::size_t generators = 0;
    std::size_t dim = 0;
    std::vector<QVec> z_basis;     // Z^1 as stacked vectors in Q^{generators*dim}
    std::vector<QVec> b_basis;     // independent coboundaries, same coordinates
    std::vector<Cocycle> h1_reps;  // Z^1 basis members independent modulo B^1
    SpanReducer b_span{0};

    std::size_t z_dim() const { return z_basis.size(); }
    std::size_t b_dim() const { return b_basis.size(); }
    std::size_t h1_dim() const { return h1_reps.size(); }
};

inline CohomologySpaces cocycle_space(const Representation& rep) {
    RelatorCheck rc = verify_relators(rep);
    if (!rc.ok) throw std::invalid_argument("cocycle_space: relator does not act as identity");
    std::size_t n = rep.presentation.generators;
    std::size_t k = rep.dim;
    std::size_t total = n * k;

    QMat constraints(rep.presentation.relators.size() * k, total);
    for (std::size_t r = 0; r < rep.presentation.relators.size(); ++r) {
        std::vector<QMat> coef = extension_coefficients(rep, rep.presentation.relators[r]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t row = 0; row < k; ++row)
                for (std::size_t col = 0; col < k; ++col)
                    constraints(r * k + row, i * k + col) = coef[i](row, col);
    }

    CohomologySpaces out;
    out.generators = n;
    out.dim = k;
    out.z_basis = kernel_basis(constraints);
    out.b_span = SpanReducer(total);

    SpanReducer z_span = span_of(out.z_basis, total);
    for (std::size_t j = 0; j < k; ++j) {
        QVec x(k);
        x[j] = 1;
        QVec col = stack(coboundary(rep, x));
        if (!z_span.contains(col))
            throw std::logic_error("cocycle_space: coboundary outside Z^1");
        if (out.b_span.add(col)) out.b_basis.push_back(std::move(col));
    }

    SpanReducer mod_b = out.b_span;
    for (const QVec& z : out.z_basis)
        if (mod_b.add(z)) out.h1_reps.push_back(unstack(z, n, k));
    return out;
}

// Witness x with c = (rho(.) - 1) x, if c is a coboundary.
inline std::optional<QVec> is_coboundary(const Representation& rep, const Cocycle& c) {
    validate_shape(rep, c);
    std::size_t n = rep.presentation.generators;
    std::size_t k = rep.dim;
    QMat m(n * k, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t row = 0; row < k; ++row)
            for (std::size_t col = 0; col < k; ++col)
                m(i * k + row, col) = rep.images[i](row, col) - (row == col ? 1 : 0);
    return solve(m, stack(c));
}

// Class of extend(c, w) in M / im(rho(w) - 1), with the quotient presented
// in the canonical complement coordinates of the image's echelon span.
struct RestrictionClass {
    FreeWord word;
    QVec value;
    std::vector<QVec> image_basis;
    std::vector<std::size_t> complement;
    QVec reduced;
    bool vanishes = false;
};

inline RestrictionClass restriction_to_cyclic(const Representation& rep, const Cocycle& c,
                                              const FreeWord& w) {
    QMat g = evaluate_word(rep, w) - QMat::identity(rep.dim);
    SpanReducer image(rep.dim);
    for (std::size_t j = 0; j < rep.dim; ++j) image.add(g.col(j));
    RestrictionClass out;
    out.word = w;
    out.value = extend_cocycle(rep, c, w);
    out.image_basis = image.basis();
    out.complement = image.complement();
    out.reduced = image.quotient_coords(out.value);
    out.vanishes = is_zero(out.reduced);
    return out;
}

// Cocycles whose restriction class vanishes at every probe word. Contains
// B^1; reported relative to the given probe list only.
struct RestrictionKernel {
    std::vector<FreeWord> probes;
    std::vector<QVec> kernel_basis;  // full preimage in Z^1, stacked coords
    std::vector<Cocycle> h1_reps;    // kernel members independent modulo B^1
    std::size_t h1_dim = 0;
};

inline RestrictionKernel restriction_kernel(const Representation& rep,
                                            const CohomologySpaces& spaces,
                                            const std::vector<FreeWord>& probes) {
    std::size_t zn = spaces.z_basis.size();
    std::vector<QVec> rows_per_z(zn);  // stacked quotient coordinates per basis cocycle
    for (const FreeWord& w : probes) {
        QMat g = evaluate_word(rep, w) - QMat::identity(rep.dim);
        SpanReducer image(rep.dim);
        for (std::size_t j = 0; j < rep.dim; ++j) image.add(g.col(j));
        for (std::size_t z = 0; z < zn; ++z) {
            Cocycle c = unstack(spaces.z_basis[z], spaces.generators, spaces.dim);
            QVec q = image.quotient_coords(extend_cocycle(rep, c, w));
            rows_per_z[z].insert(rows_per_z[z].end(), q.begin(), q.end());
        }
    }
    std::size_t rows = zn == 0 ? 0 : rows_per_z[0].size();
    QMat m(rows, zn);
    for (std::size_t z = 0; z < zn; ++z)
        for (std::size_t r = 0; r < rows; ++r) m(r, z) = rows_per_z[z][r];

    RestrictionKernel out;
    out.probes = probes;
    for (const QVec& alpha : kernel_basis(m)) {
        QVec v(spaces.generators * spaces.dim);
        for (std::size_t z = 0; z < zn; ++z)
            if (alpha[z] != 0) v = v + alpha[z] * spaces.z_basis[z];
        out.kernel_basis.push_back(std::move(v));
    }
    SpanReducer mod_b = spaces.b_span;
    for (const QVec& v : out.kernel_basis)
        if (mod_b.add(v)) out.h1_reps.push_back(unstack(v, spaces.generators, spaces.dim));
    out.h1_dim = out.h1_reps.size();
    return out;
}

// Shift c by a coboundary so that the shifted cocycle extends to zero on w.
struct AdjustResult {
    bool ok = false;
    Cocycle adjusted;
    QVec shift;  // extend(c, w) == (rho(w) - 1) shift
    std::string reason;
};

inline AdjustResult coboundary_adjust(const Representation& rep, const Cocycle& c,
                                      const FreeWord& w) {
    QMat g = evaluate_word(rep, w) - QMat::identity(rep.dim);
    QVec target = extend_cocycle(rep, c, w);
    auto v = solve(g, target);
    if (!v) return {false, c, {}, "extension value lies outside the image of rho(w) - 1"};
    AdjustResult out;
    out.ok = true;
    out.shift = *v;
    Cocycle delta = coboundary(rep, *v);
    out.adjusted.values.reserve(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i)
        out.adjusted.values.push_back(c.values[i] - delta.values[i]);
    if (!is_zero(extend_cocycle(rep, out.adjusted, w)))
        throw std::logic_error("coboundary_adjust: shifted extension nonzero");
    return out;
}

}  // namespace vanlat
