#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "vanlat/matrix.hpp"
#include "vanlat/smith.hpp"

namespace vanlat {

enum class Symmetry { symmetric, alternating };

// Z^rank with an integer bilinear form. Degenerate forms are allowed;
// operations that need nondegeneracy say so.
struct BilinearLattice {
    std::size_t rank = 0;
    Symmetry symmetry = Symmetry::symmetric;
    IMat gram;
};

inline void validate(const BilinearLattice& l) {
    if (l.gram.rows() != l.rank || l.gram.cols() != l.rank)
        throw std::invalid_argument("lattice: gram shape");
    for (std::size_t i = 0; i < l.rank; ++i)
        for (std::size_t j = 0; j < l.rank; ++j) {
            if (l.symmetry == Symmetry::symmetric) {
                if (l.gram(i, j) != l.gram(j, i))
                    throw std::invalid_argument("lattice: gram not symmetric");
            } else {
                if (l.gram(i, j) != -l.gram(j, i))
                    throw std::invalid_argument("lattice: gram not alternating");
            }
        }
}

inline BilinearLattice make_lattice(Symmetry sym, IMat gram) {
    BilinearLattice l{gram.rows(), sym, std::move(gram)};
    validate(l);
    return l;
}

inline Int pairing(const BilinearLattice& l, const IVec& x, const IVec& y) {
    if (x.size() != l.rank || y.size() != l.rank) throw std::invalid_argument("pairing: size");
    return dot(x, l.gram * y);
}

inline Rat pairing(const BilinearLattice& l, const QVec& x, const QVec& y) {
    if (x.size() != l.rank || y.size() != l.rank) throw std::invalid_argument("pairing: size");
    return dot(x, to_rational(l.gram) * y);
}

// x |-> x - <x,v> v
inline IMat transvection_matrix(const BilinearLattice& l, const IVec& v) {
    if (v.size() != l.rank) throw std::invalid_argument("transvection: size");
    return IMat::identity(l.rank) - outer(v, l.gram * v);
}

inline IVec transvect(const BilinearLattice& l, const IVec& v, const IVec& x) {
    return x - pairing(l, x, v) * v;
}

// inverse transvection x |-> x + <x,v> v; equals T_v itself when <v,v> = 2
inline IVec transvect_inverse(const BilinearLattice& l, const IVec& v, const IVec& x) {
    Int c = pairing(l, v, v);
    if (c == 0) return x + pairing(l, x, v) * v;
    if (c == 2) return transvect(l, v, x);
    throw std::invalid_argument("transvection inverse: <v,v> not 0 or 2");
}

inline bool preserves_form(const BilinearLattice& l, const IMat& g) {
    if (g.rows() != l.rank || g.cols() != l.rank) return false;
    return g.transpose() * l.gram * g == l.gram;
}

inline bool is_isometry(const BilinearLattice& l, const IMat& g) {
    return preserves_form(l, g) && is_unimodular(g);
}

// Geometric side of the two monodromy regimes: ambient dimension d fixes the
// sign (-1)^{d(d-1)/2} and whether the intersection form is symmetric (d odd)
// or alternating (d even).
struct MonodromyFlavor {
    long long ambient_dim;
    int epsilon;  // (-1)^{d(d-1)/2}
    Symmetry symmetry;
};

inline MonodromyFlavor flavor_of_dimension(long long d) {
    if (d < 0) throw std::invalid_argument("flavor: negative dimension");
    int eps = ((d * (d - 1) / 2) % 2 == 0) ? 1 : -1;
    return {d, eps, (d % 2 != 0) ? Symmetry::symmetric : Symmetry::alternating};
}

// Exact order analysis of a transvection.
struct OrderReport {
    bool finite = false;
    Int order = 0;           // set when finite
    std::string certificate; // "identity" | "involution" | "unipotent" | "scaling"
};

inline OrderReport picard_lefschetz_order(const BilinearLattice& l, const IVec& v,
                                          const MonodromyFlavor& flavor) {
    if (flavor.symmetry != l.symmetry)
        throw std::invalid_argument("picard_lefschetz_order: flavor does not match form");
    IMat t = transvection_matrix(l, v);
    if (t.is_identity()) return {true, 1, "identity"};
    if ((t * t).is_identity()) return {true, 2, "involution"};
    IMat n = t - IMat::identity(l.rank);
    if (!n.is_zero() && (n * n).is_zero()) return {false, 0, "unipotent"};
    // remaining case: T_v v = (1 - <v,v>) v with |1 - <v,v>| >= 2
    return {false, 0, "scaling"};
}

}  // namespace vanlat
