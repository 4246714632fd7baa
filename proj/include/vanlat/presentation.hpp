#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vanlat/lattice.hpp"
#include "vanlat/matrix.hpp"
#include "vanlat/word.hpp"

namespace vanlat {

struct Presentation {
    std::size_t generators = 0;
    std::vector<FreeWord> relators;
};

inline void validate(const Presentation& p) {
    for (const FreeWord& r : p.relators) validate_word(r, p.generators);
}

// Generators acting by invertible rational matrices on Q^dim. When a lattice
// is attached and form_preserving is set, the images respect its pairing.
struct Representation {
    Presentation presentation;
    std::size_t dim = 0;
    std::vector<QMat> images;
    std::vector<QMat> inverses;
    std::optional<BilinearLattice> lattice;
    bool form_preserving = false;
};

inline Representation make_representation(Presentation pres, std::vector<QMat> images,
                                          std::optional<BilinearLattice> lattice = std::nullopt,
                                          bool form_preserving = false) {
    validate(pres);
    if (images.size() != pres.generators)
        throw std::invalid_argument("representation: one image per generator required");
    Representation rep;
    rep.dim = images.empty() ? (lattice ? lattice->rank : 0) : images[0].rows();
    for (const QMat& m : images) {
        if (m.rows() != rep.dim || m.cols() != rep.dim)
            throw std::invalid_argument("representation: image shape");
    }
    rep.inverses.reserve(images.size());
    for (const QMat& m : images) {
        auto inv = inverse(m);
        if (!inv) throw std::invalid_argument("representation: image not invertible");
        rep.inverses.push_back(std::move(*inv));
    }
    if (lattice) {
        validate(*lattice);
        if (lattice->rank != rep.dim)
            throw std::invalid_argument("representation: lattice rank != dim");
        if (form_preserving) {
            QMat g = to_rational(lattice->gram);
            for (const QMat& m : images)
                if (m.transpose() * g * m != g)
                    throw std::invalid_argument("representation: image does not preserve form");
        }
    } else if (form_preserving) {
        throw std::invalid_argument("representation: form_preserving without lattice");
    }
    rep.presentation = std::move(pres);
    rep.images = std::move(images);
    rep.lattice = std::move(lattice);
    rep.form_preserving = form_preserving;
    return rep;
}

inline QMat evaluate_word(const Representation& rep, const FreeWord& w) {
    validate_word(w, rep.presentation.generators);
    QMat acc = QMat::identity(rep.dim);
    for (const Letter& l : w) {
        const QMat& base = l.exp > 0 ? rep.images[l.gen] : rep.inverses[l.gen];
        acc = acc * power(base, int_of(l.exp > 0 ? l.exp : -l.exp));
    }
    return acc;
}

struct RelatorCheck {
    bool ok = true;
    std::optional<std::size_t> failing_index;
};

inline RelatorCheck verify_relators(const Representation& rep) {
    for (std::size_t i = 0; i < rep.presentation.relators.size(); ++i)
        if (!evaluate_word(rep, rep.presentation.relators[i]).is_identity()) return {false, i};
    return {};
}

// Reflections (symmetric, norm-2 vectors) or transvections (alternating)
// attached to a list of distinguished vectors; the standard monodromy-style
// representation of a free group on those letters.
inline Representation transvection_representation(const BilinearLattice& l,
                                                  const std::vector<IVec>& vectors,
                                                  std::vector<FreeWord> relators = {}) {
    Presentation pres{vectors.size(), std::move(relators)};
    std::vector<QMat> images;
    images.reserve(vectors.size());
    for (const IVec& v : vectors) images.push_back(to_rational(transvection_matrix(l, v)));
    return make_representation(std::move(pres), std::move(images), l, true);
}

}  // namespace vanlat
