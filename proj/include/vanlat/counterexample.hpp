#pragma once

#include <string>
#include <vector>

#include "vanlat/certify.hpp"
#include "vanlat/cohomology.hpp"
#include "vanlat/presentation.hpp"

namespace vanlat {

// Free abelian group of rank two acting on Z^3 by commuting unipotent
// matrices. The cocycle with phi(s) = e_1, phi(t) = 0 represents a nonzero
// class whose restriction to every cyclic subgroup vanishes, so restriction
// to cyclic subgroups is not injective on H^1 in general.
inline Representation counterexample_representation() {
    Presentation pres{2, {FreeWord{{0, 1}, {1, 1}, {0, -1}, {1, -1}}}};
    QMat a1 = QMat::identity(3), a2 = QMat::identity(3);
    a1(0, 2) = 1;
    a2(0, 1) = 2;
    a2(0, 2) = 2;
    a2(1, 2) = 2;
    return make_representation(std::move(pres), {a1, a2});
}

inline Cocycle counterexample_cocycle() {
    Cocycle c;
    c.values = {QVec{1, 0, 0}, QVec(3)};
    return c;
}

// closed form for the image of s^a t^b
inline IMat counterexample_power_matrix(const Int& a, const Int& b) {
    IMat m = IMat::identity(3);
    m(0, 1) = 2 * b;
    m(0, 2) = 2 * b * b + a;
    m(1, 2) = 2 * b;
    return m;
}

inline VerificationReport reproduce_counterexample() {
    VerificationReport out{"counterexample", false, "", std::nullopt, 0, 0};
    auto fail = [&out](std::string why) {
        out.failing_case = std::move(why);
        return out;
    };

    Representation rep = counterexample_representation();
    Cocycle phi = counterexample_cocycle();
    if (!verify_relators(rep).ok) return fail("images do not commute");

    CohomologySpaces sp = cocycle_space(rep);
    if (sp.z_dim() != 4 || sp.b_dim() != 2 || sp.h1_dim() != 2)
        return fail("dimensions are not (4, 2, 2): got (" + std::to_string(sp.z_dim()) + ", " +
                    std::to_string(sp.b_dim()) + ", " + std::to_string(sp.h1_dim()) + ")");
    if (failing_relator(rep, phi)) return fail("phi is not a cocycle");
    if (is_coboundary(rep, phi)) return fail("phi is a coboundary");

    auto word_of = [](const Int& a, const Int& b) {
        FreeWord w;
        if (a != 0) w.push_back({0, static_cast<long long>(a.get_si())});
        if (b != 0) w.push_back({1, static_cast<long long>(b.get_si())});
        return w;
    };
    auto case_name = [](const Int& a, const Int& b) {
        return "a=" + to_string(a) + " b=" + to_string(b);
    };

    for (int a = -20; a <= 20; ++a)
        for (int b = -20; b <= 20; ++b) {
            Int ia = a, ib = b;
            FreeWord w = word_of(ia, ib);
            if (to_rational(counterexample_power_matrix(ia, ib)) != evaluate_word(rep, w))
                return fail(case_name(ia, ib) + ": closed form disagrees with the product");
            if (!restriction_to_cyclic(rep, phi, w).vanishes)
                return fail(case_name(ia, ib) + ": restriction class is nonzero");
            ++out.trials;
        }

    // the two symbolic witness families, exercised at exponents far beyond
    // the sweep: for b != 0 the vector (0, a/2b, 0) maps to (a, 0, 0) under
    // s^a t^b - id, and for b = 0 the vector (0, 0, 1) does
    Int big = Int(1) << 60;
    std::vector<std::pair<Int, Int>> cases = {{big + 7, 3},          {-(big * 5 + 1), big},
                                              {big, -(big + 11)},    {-big, -2},
                                              {big * big + 13, 0},   {-(big + 3), 0}};
    for (const auto& [a, b] : cases) {
        IMat m = counterexample_power_matrix(a, b);
        QVec x(3);
        if (b != 0)
            x[1] = make_rat(a, 2 * b);
        else
            x[2] = 1;
        QVec img = to_rational(m) * x - x;
        if (img != QVec{Rat(a), 0, 0})
            return fail(case_name(a, b) + ": symbolic witness fails");
        ++out.trials;
    }
    // spot check that the closed form still tracks the group product at one
    // representable huge exponent pair
    {
        Int ia = Int(1) << 50, ib = -(Int(1) << 40);
        if (to_rational(counterexample_power_matrix(ia, ib)) != evaluate_word(rep, word_of(ia, ib)))
            return fail("huge exponent closed form disagrees with the product");
        if (!restriction_to_cyclic(rep, phi, word_of(ia, ib)).vanishes)
            return fail("huge exponent restriction class is nonzero");
        ++out.trials;
    }

    out.passed = true;
    out.detail = "nonzero class with vanishing restriction to every cyclic subgroup; "
                 "H^1 has dimension 2";
    return out;
}

}  // namespace vanlat
