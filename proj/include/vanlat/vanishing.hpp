#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vanlat/lattice.hpp"
#include "vanlat/linalg.hpp"
#include "vanlat/matrix.hpp"
#include "vanlat/smith.hpp"
#include "vanlat/word.hpp"

namespace vanlat {

struct Bounds {
    std::size_t depth = 8;       // BFS layers
    std::size_t size = 2048;     // max enumerated orbit size
    long long exponent = 4096;   // power searches
    std::size_t wordlen = 12;    // random word length in experiments
};

// Orbit member delta = rho(word) seeds[seed]; the word is in the implicit
// generators g_i = T_{seeds[i]}, so T_delta = word g_seed word^-1.
struct OrbitElement {
    IVec vec;
    FreeWord word;
    std::size_t seed = 0;
};

struct Orbit {
    std::vector<OrbitElement> elements;
    bool truncated = false;
    std::size_t layers = 0;
};

// BFS closure of the seeds under T_delta^{+-1} for delta already found,
// layer by layer; deterministic enumeration order. Truncation at the depth
// or size bound is reported, never silently dropped.
inline Orbit orbit_closure(const BilinearLattice& l, const std::vector<IVec>& seeds,
                           const Bounds& bounds) {
    for (const IVec& s : seeds) {
        if (s.size() != l.rank) throw std::invalid_argument("orbit: seed size");
        if (is_zero(s)) throw std::invalid_argument("orbit: zero seed");
        Int n = pairing(l, s, s);
        if (n != 0 && n != 2)
            throw std::invalid_argument("orbit: seed norm must be 0 or 2 for invertible transvections");
    }
    Orbit o;
    std::map<IVec, std::size_t> index;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (index.count(seeds[i])) continue;
        index.emplace(seeds[i], o.elements.size());
        o.elements.push_back({seeds[i], {}, i});
    }
    bool grew = !o.elements.empty();
    while (grew && o.layers < bounds.depth && !o.truncated) {
        grew = false;
        std::size_t end = o.elements.size();
        for (std::size_t a = 0; a < end && !o.truncated; ++a) {
            for (int sign : {1, -1}) {
                for (std::size_t x = 0; x < end; ++x) {
                    const OrbitElement& gen = o.elements[a];
                    const OrbitElement& tgt = o.elements[x];
                    IVec y = sign > 0 ? transvect(l, gen.vec, tgt.vec)
                                      : transvect_inverse(l, gen.vec, tgt.vec);
                    if (index.count(y)) continue;
                    if (o.elements.size() >= bounds.size) {
                        o.truncated = true;
                        break;
                    }
                    FreeWord tword = conjugate(gen.word, FreeWord{{gen.seed, sign}});
                    index.emplace(y, o.elements.size());
                    o.elements.push_back({std::move(y), concat(tword, tgt.word), tgt.seed});
                    grew = true;
                }
                if (o.truncated) break;
            }
        }
        if (grew) ++o.layers;
    }
    if (grew && !o.truncated && o.layers >= bounds.depth) o.truncated = true;
    return o;
}

enum class CheckStatus { pass, pass_within_bounds, fail, inconclusive };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::pass_within_bounds: return "pass-within-bounds";
        case CheckStatus::fail: return "fail";
        default: return "inconclusive";
    }
}

struct PropertyResult {
    std::string property;
    CheckStatus status = CheckStatus::inconclusive;
    std::string detail;
};

struct VanishingLatticeReport {
    CheckStatus status = CheckStatus::inconclusive;
    std::vector<PropertyResult> properties;
    Orbit orbit;
    std::vector<Int> divisors;  // Smith divisors of the orbit matrix
    std::optional<std::pair<IVec, IVec>> unit_pair;
};

// The three defining properties of a vanishing lattice for the set
// Delta = closure(seeds): Delta spans the lattice; Delta is one orbit of its
// own transvection group; some pair pairs to 1. Spanning is exact (the
// closure never leaves the span of the seeds); the others may be bounded.
inline VanishingLatticeReport check_vanishing_lattice(const BilinearLattice& l,
                                                      const std::vector<IVec>& seeds,
                                                      const Bounds& bounds) {
    VanishingLatticeReport rep;
    rep.orbit = orbit_closure(l, seeds, bounds);
    const auto& elems = rep.orbit.elements;

    {
        IMat m(l.rank, elems.size());
        for (std::size_t j = 0; j < elems.size(); ++j)
            for (std::size_t i = 0; i < l.rank; ++i) m(i, j) = elems[j].vec[i];
        rep.divisors = smith_normal_form(m).divisors();
        bool gen = rep.divisors.size() == l.rank;
        for (const Int& d : rep.divisors) gen = gen && d == 1;
        rep.properties.push_back({"generates",
                                  gen ? CheckStatus::pass : CheckStatus::fail,
                                  gen ? "orbit spans the full lattice"
                                      : "orbit spans a proper sublattice"});
    }

    {
        // Reach every seed from the first using the transvections of the
        // whole enumerated closure as a fixed generator set. Elements reached
        // are honestly in the orbit of the first seed, so full reachability
        // is a definitive pass even when the enumeration was truncated.
        PropertyResult pr{"single_orbit", CheckStatus::pass, "single seed"};
        std::vector<IVec> dedup;
        for (const IVec& s : seeds)
            if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(s);
        if (dedup.size() > 1) {
            std::set<IVec> pending(dedup.begin() + 1, dedup.end());
            std::vector<IVec> reach{dedup[0]};
            std::set<IVec> seen{dedup[0]};
            // a sweep can add up to 2 |elems| elements, so the reach set gets
            // a budget wide enough to finish one sweep and enter the next
            std::size_t budget = 2 * bounds.size + 2;
            bool grew = true, size_hit = false;
            std::size_t layer = 0;
            while (grew && !pending.empty() && layer < bounds.depth && !size_hit) {
                grew = false;
                std::size_t end = reach.size();
                for (const OrbitElement& gen : elems) {
                    for (int sign : {1, -1}) {
                        for (std::size_t x = 0; x < end && !size_hit; ++x) {
                            IVec y = sign > 0 ? transvect(l, gen.vec, reach[x])
                                              : transvect_inverse(l, gen.vec, reach[x]);
                            if (seen.count(y)) continue;
                            if (reach.size() >= budget) {
                                size_hit = true;
                                break;
                            }
                            seen.insert(y);
                            pending.erase(y);
                            reach.push_back(std::move(y));
                            grew = true;
                        }
                        if (size_hit || pending.empty()) break;
                    }
                    if (size_hit || pending.empty()) break;
                }
                if (grew) ++layer;
            }
            bool reach_complete = !grew && !size_hit;
            if (pending.empty()) {
                pr.status = CheckStatus::pass;
                pr.detail = "every seed reached from the first";
            } else if (reach_complete && !rep.orbit.truncated) {
                pr.status = CheckStatus::fail;
                pr.detail = "orbit of the first seed misses another seed";
            } else {
                pr.status = CheckStatus::inconclusive;
                pr.detail = "seed not reached within bounds";
            }
        }
        rep.properties.push_back(pr);
    }

    {
        PropertyResult pr{"unit_pair", CheckStatus::inconclusive, "no pair found within bounds"};
        for (std::size_t i = 0; i < elems.size() && !rep.unit_pair; ++i)
            for (std::size_t j = 0; j < elems.size(); ++j)
                if (i != j && pairing(l, elems[i].vec, elems[j].vec) == 1) {
                    rep.unit_pair = {elems[i].vec, elems[j].vec};
                    break;
                }
        if (rep.unit_pair) {
            pr.status = CheckStatus::pass;
            pr.detail = "explicit pair with pairing 1";
        } else {
            Int g = 0;
            for (const IVec& a : seeds)
                for (const IVec& b : seeds) g = gcd(g, pairing(l, a, b));
            if (g != 1) {
                pr.status = CheckStatus::fail;
                pr.detail = g == 0 ? "all seed pairings vanish"
                                   : "every pairing on the seed span is divisible by " + to_string(g);
            } else if (!rep.orbit.truncated) {
                pr.status = CheckStatus::fail;
                pr.detail = "complete orbit contains no pair with pairing 1";
            }
        }
        rep.properties.push_back(pr);
    }

    bool any_fail = false, any_inconclusive = false, all_exact = true;
    for (const PropertyResult& p : rep.properties) {
        if (p.status == CheckStatus::fail) any_fail = true;
        if (p.status == CheckStatus::inconclusive) any_inconclusive = true;
        if (p.status != CheckStatus::pass) all_exact = false;
    }
    rep.status = any_fail           ? CheckStatus::fail
                 : any_inconclusive ? CheckStatus::inconclusive
                 : all_exact        ? CheckStatus::pass
                                    : CheckStatus::pass_within_bounds;
    return rep;
}

// g lies in the sharp subgroup at the given level iff every coordinate
// functional lambda admits an integral v with lambda(gx - x) = level <v, x>.
struct MembershipCertificate {
    bool member = false;
    int level = 1;
    std::vector<IVec> witnesses;  // one per coordinate functional
    std::optional<std::size_t> failing_functional;
};

inline MembershipCertificate sp_sharp_membership(const BilinearLattice& l, const IMat& g,
                                                 int level, bool allow_degenerate = false) {
    if (level != 1 && level != 2) throw std::invalid_argument("sp_sharp: level must be 1 or 2");
    if (!preserves_form(l, g) || !is_unimodular(g))
        throw std::invalid_argument("sp_sharp: not an isometry of the lattice");
    if (!allow_degenerate && determinant(l.gram) == 0)
        throw std::invalid_argument("sp_sharp: degenerate form not allowed here");
    IMat gi = g - IMat::identity(l.rank);
    IMat gt = l.gram.transpose();
    MembershipCertificate cert;
    cert.level = level;
    for (std::size_t i = 0; i < l.rank; ++i) {
        IVec rhs(l.rank);
        for (std::size_t j = 0; j < l.rank; ++j) {
            if (gi(i, j) % level != 0) return {false, level, {}, i};
            rhs[j] = gi(i, j) / level;
        }
        IntegralSolution sol = integral_membership(gt, rhs);
        if (!sol.x) return {false, level, {}, i};
        if (gt * *sol.x != rhs) throw std::logic_error("sp_sharp: witness check failed");
        cert.witnesses.push_back(std::move(*sol.x));
    }
    cert.member = true;
    return cert;
}

// delta_1 = first orbit element plus rank-1 further elements, linearly
// independent, each pairing 1 against delta_1. Candidates are scanned in
// lexicographic vector order, so the frame is deterministic.
struct FrameReport {
    bool found = false;
    std::vector<OrbitElement> frame;
    bool truncated = false;
};

inline FrameReport find_independent_frame(const BilinearLattice& l, const Orbit& orbit) {
    FrameReport rep;
    rep.truncated = orbit.truncated;
    if (orbit.elements.empty() || l.rank == 0) return rep;
    const OrbitElement& first = orbit.elements[0];
    rep.frame.push_back(first);
    SpanReducer span(l.rank);
    span.add(to_rational(first.vec));
    std::vector<const OrbitElement*> cands;
    for (const OrbitElement& e : orbit.elements)
        if (pairing(l, first.vec, e.vec) == 1) cands.push_back(&e);
    std::sort(cands.begin(), cands.end(),
              [](const OrbitElement* a, const OrbitElement* b) { return a->vec < b->vec; });
    for (const OrbitElement* c : cands) {
        if (rep.frame.size() == l.rank) break;
        if (span.add(to_rational(c->vec))) rep.frame.push_back(*c);
    }
    rep.found = rep.frame.size() == l.rank;
    return rep;
}

// Constructive finite-index certificate: least q with g^q stabilizing the
// frame sublattice V', then the least m whose accumulated functional data
// lands in 2 k^2 V' (k the index), certified by an exact level-2 membership
// check of g^{q m} on V'. Never returns an unverified exponent.
struct PowerCertificate {
    bool found = false;
    Int exponent = 0;  // q * m
    Int q = 0, m = 0;
    Int index = 0;  // [V : V']
    BilinearLattice sublattice;
    IMat action;  // g^{q m} in frame coordinates
    MembershipCertificate cert;
    std::string reason;
};

inline PowerCertificate finite_index_power_certificate(const BilinearLattice& l,
                                                       const std::vector<IVec>& frame,
                                                       const IMat& g, const Bounds& bounds) {
    PowerCertificate out;
    if (frame.size() != l.rank) throw std::invalid_argument("power certificate: frame size");
    if (!preserves_form(l, g) || !is_unimodular(g))
        throw std::invalid_argument("power certificate: not an isometry");
    IMat b(l.rank, l.rank);
    for (std::size_t j = 0; j < l.rank; ++j)
        for (std::size_t i = 0; i < l.rank; ++i) b(i, j) = frame[j][i];
    Int det_b = determinant(b);
    if (det_b == 0) throw std::invalid_argument("power certificate: frame not independent");
    out.index = abs(det_b);
    const Int& k = out.index;
    QMat binv = *inverse(to_rational(b));

    IMat h = IMat::identity(l.rank);
    IMat h_frame;
    long long q = 0;
    for (long long e = 1; e <= bounds.exponent; ++e) {
        h = h * g;
        auto x = to_integral(binv * to_rational(h) * to_rational(b));
        if (x && is_unimodular(*x)) {
            q = e;
            h_frame = std::move(*x);
            break;
        }
    }
    if (q == 0) {
        out.reason = "no power stabilizes the frame sublattice within the exponent bound";
        return out;
    }

    // lambda_i = k * (i-th frame coordinate) extends integrally to the whole
    // lattice as row i of k B^{-1}; its pairing witness against h gives w_i
    auto kbinv = to_integral(Rat(k) * binv);
    if (!kbinv) throw std::logic_error("power certificate: k B^{-1} not integral");
    IMat lam_h = *kbinv * (h - IMat::identity(l.rank));
    IMat gt = l.gram.transpose();
    std::vector<IVec> w;
    for (std::size_t i = 0; i < l.rank; ++i) {
        IntegralSolution sol = integral_membership(gt, lam_h.row(i));
        if (!sol.x) {
            out.reason = "extended functional admits no pairing witness; the input is not in the sharp group";
            return out;
        }
        w.push_back(k * *sol.x);
    }

    auto hinv_q = inverse(to_rational(h));
    IMat hinv = *to_integral(*hinv_q);
    Int two_k2 = 2 * k * k;
    IMat twok2b = two_k2 * b;
    IMat gram_sub = b.transpose() * l.gram * b;
    BilinearLattice sub = make_lattice(l.symmetry, gram_sub);
    std::vector<IVec> s = w, u = w;
    for (long long m = 1; m <= bounds.exponent; ++m) {
        if (m > 1)
            for (std::size_t i = 0; i < l.rank; ++i) {
                u[i] = hinv * u[i];
                s[i] = s[i] + u[i];
            }
        bool all_in = true;
        for (std::size_t i = 0; i < l.rank && all_in; ++i)
            all_in = integral_membership(twok2b, s[i]).x.has_value();
        if (!all_in) continue;
        IMat action = power(h_frame, int_of(m));
        MembershipCertificate cert = sp_sharp_membership(sub, action, 2, true);
        if (!cert.member) continue;
        out.found = true;
        out.q = int_of(q);
        out.m = int_of(m);
        out.exponent = out.q * out.m;
        out.sublattice = sub;
        out.action = std::move(action);
        out.cert = std::move(cert);
        return out;
    }
    out.reason = "no certified exponent within the exponent bound";
    return out;
}

}  // namespace vanlat
