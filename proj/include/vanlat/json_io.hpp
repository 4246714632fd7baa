#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vanlat/certify.hpp"
#include "vanlat/cohomology.hpp"
#include "vanlat/lattice.hpp"
#include "vanlat/presentation.hpp"
#include "vanlat/vanishing.hpp"
#include "vanlat/word.hpp"

namespace vanlat {

using Json = nlohmann::json;

// All integers are written as decimal strings so nothing is clipped at 64
// bits; readers accept plain JSON numbers as well. Parse errors carry the
// field path.

[[noreturn]] inline void input_error(const std::string& path, const std::string& why) {
    throw std::invalid_argument("field '" + path + "': " + why);
}

inline Json json_of(const Int& x) { return to_string(x); }
inline Json json_of(const Rat& q) { return to_string(q); }

inline Json json_of(const IVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(json_of(x));
    return a;
}

inline Json json_of(const QVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(json_of(x));
    return a;
}

template <class T>
inline Json json_of_mat(const Mat<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json json_of(const FreeWord& w) {
    Json a = Json::array();
    for (const Letter& l : w)
        a.push_back(Json::array({std::to_string(l.gen), std::to_string(l.exp)}));
    return a;
}

inline Int read_int(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_int(j.get<std::string>());
        } catch (const std::exception& e) {
            input_error(path, e.what());
        }
    }
    if (j.is_number_integer()) return int_of(j.get<long long>());
    input_error(path, "expected a decimal integer string");
}

inline long long read_ll(const Json& j, const std::string& path) {
    Int x = read_int(j, path);
    if (!x.fits_slong_p()) input_error(path, "value exceeds the machine range");
    return x.get_si();
}

inline std::size_t read_size(const Json& j, const std::string& path) {
    long long x = read_ll(j, path);
    if (x < 0) input_error(path, "expected a nonnegative integer");
    return static_cast<std::size_t>(x);
}

inline Rat read_rat(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception& e) {
            input_error(path, e.what());
        }
    }
    if (j.is_number_integer()) return Rat(int_of(j.get<long long>()));
    input_error(path, "expected a rational string");
}

inline IVec read_ivec(const Json& j, const std::string& path) {
    if (!j.is_array()) input_error(path, "expected an array");
    IVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = read_int(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

inline QVec read_qvec(const Json& j, const std::string& path) {
    if (!j.is_array()) input_error(path, "expected an array");
    QVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = read_rat(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

inline IMat read_imat(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) input_error(path, "expected a nonempty array of rows");
    std::size_t cols = 0;
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(read_ivec(j[i], path + "[" + std::to_string(i) + "]"));
        if (i == 0)
            cols = rows[0].size();
        else if (rows[i].size() != cols)
            input_error(path, "ragged rows");
    }
    IMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
    return m;
}

inline QMat read_qmat(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) input_error(path, "expected a nonempty array of rows");
    std::size_t cols = 0;
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(read_qvec(j[i], path + "[" + std::to_string(i) + "]"));
        if (i == 0)
            cols = rows[0].size();
        else if (rows[i].size() != cols)
            input_error(path, "ragged rows");
    }
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
    return m;
}

inline FreeWord read_word(const Json& j, const std::string& path) {
    if (!j.is_array()) input_error(path, "expected an array of [generator, exponent] pairs");
    FreeWord w;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& l = j[i];
        std::string p = path + "[" + std::to_string(i) + "]";
        if (!l.is_array() || l.size() != 2) input_error(p, "expected [generator, exponent]");
        w.push_back({read_size(l[0], p + "[0]"), read_ll(l[1], p + "[1]")});
    }
    return w;
}

inline Json json_of(const BilinearLattice& l) {
    return Json{{"rank", std::to_string(l.rank)},
                {"symmetry", l.symmetry == Symmetry::symmetric ? "symmetric" : "alternating"},
                {"gram", json_of_mat(l.gram)}};
}

inline BilinearLattice read_lattice(const Json& j, const std::string& path) {
    if (!j.is_object()) input_error(path, "expected an object");
    if (!j.contains("symmetry") || !j["symmetry"].is_string())
        input_error(path + ".symmetry", "expected \"symmetric\" or \"alternating\"");
    std::string sym = j["symmetry"].get<std::string>();
    if (sym != "symmetric" && sym != "alternating")
        input_error(path + ".symmetry", "expected \"symmetric\" or \"alternating\"");
    if (!j.contains("gram")) input_error(path + ".gram", "missing");
    IMat gram = read_imat(j["gram"], path + ".gram");
    if (j.contains("rank") && read_size(j["rank"], path + ".rank") != gram.rows())
        input_error(path + ".rank", "does not match the gram matrix");
    try {
        return make_lattice(sym == "symmetric" ? Symmetry::symmetric : Symmetry::alternating,
                            std::move(gram));
    } catch (const std::exception& e) {
        input_error(path, e.what());
    }
}

inline Json json_of(const Presentation& p) {
    Json rels = Json::array();
    for (const FreeWord& r : p.relators) rels.push_back(json_of(r));
    return Json{{"generators", std::to_string(p.generators)}, {"relators", std::move(rels)}};
}

inline Presentation read_presentation(const Json& j, const std::string& path) {
    if (!j.is_object()) input_error(path, "expected an object");
    if (!j.contains("generators")) input_error(path + ".generators", "missing");
    Presentation p;
    p.generators = read_size(j["generators"], path + ".generators");
    if (j.contains("relators")) {
        if (!j["relators"].is_array()) input_error(path + ".relators", "expected an array");
        for (std::size_t i = 0; i < j["relators"].size(); ++i)
            p.relators.push_back(
                read_word(j["relators"][i], path + ".relators[" + std::to_string(i) + "]"));
    }
    try {
        validate(p);
    } catch (const std::exception& e) {
        input_error(path, e.what());
    }
    return p;
}

inline Json json_of(const Cocycle& c) {
    Json a = Json::array();
    for (const QVec& v : c.values) a.push_back(json_of(v));
    return a;
}

inline Cocycle read_cocycle(const Json& j, const std::string& path) {
    if (!j.is_array()) input_error(path, "expected an array of vectors");
    Cocycle c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.values.push_back(read_qvec(j[i], path + "[" + std::to_string(i) + "]"));
    return c;
}

// top-level problem document: {"lattice", "presentation", "representation",
// "seeds", "cocycle", "words", "element", "level"}; every field optional,
// commands check for what they need
struct ProblemInput {
    std::optional<BilinearLattice> lattice;
    std::optional<Presentation> presentation;
    std::vector<QMat> images;
    bool form_preserving = false;
    std::optional<Representation> rep;
    std::vector<IVec> seeds;
    std::optional<Cocycle> cocycle;
    std::vector<FreeWord> words;
    std::optional<IMat> element;
    int level = 1;
};

inline ProblemInput load_problem(const Json& j) {
    if (!j.is_object()) input_error("$", "expected a top-level object");
    ProblemInput in;
    if (j.contains("lattice")) in.lattice = read_lattice(j["lattice"], "lattice");
    if (j.contains("presentation"))
        in.presentation = read_presentation(j["presentation"], "presentation");
    if (j.contains("representation")) {
        const Json& r = j["representation"];
        if (!r.is_object()) input_error("representation", "expected an object");
        if (!in.presentation && r.contains("generators"))
            in.presentation = read_presentation(r, "representation");
        if (r.contains("images")) {
            if (!r["images"].is_array()) input_error("representation.images", "expected an array");
            for (std::size_t i = 0; i < r["images"].size(); ++i)
                in.images.push_back(
                    read_qmat(r["images"][i], "representation.images[" + std::to_string(i) + "]"));
        }
        if (r.contains("form_preserving")) {
            if (!r["form_preserving"].is_boolean())
                input_error("representation.form_preserving", "expected a boolean");
            in.form_preserving = r["form_preserving"].get<bool>();
        }
    }
    if (j.contains("seeds")) {
        if (!j["seeds"].is_array()) input_error("seeds", "expected an array");
        for (std::size_t i = 0; i < j["seeds"].size(); ++i)
            in.seeds.push_back(read_ivec(j["seeds"][i], "seeds[" + std::to_string(i) + "]"));
    }
    if (j.contains("cocycle")) in.cocycle = read_cocycle(j["cocycle"], "cocycle");
    if (j.contains("words")) {
        if (!j["words"].is_array()) input_error("words", "expected an array");
        for (std::size_t i = 0; i < j["words"].size(); ++i)
            in.words.push_back(read_word(j["words"][i], "words[" + std::to_string(i) + "]"));
    }
    if (j.contains("element")) in.element = read_imat(j["element"], "element");
    if (j.contains("level")) {
        long long lv = read_ll(j["level"], "level");
        if (lv != 1 && lv != 2) input_error("level", "expected 1 or 2");
        in.level = static_cast<int>(lv);
    }
    if (!in.images.empty()) {
        Presentation pres = in.presentation ? *in.presentation : Presentation{in.images.size(), {}};
        try {
            in.rep = make_representation(std::move(pres), in.images, in.lattice, in.form_preserving);
        } catch (const std::exception& e) {
            input_error("representation", e.what());
        }
    }
    return in;
}

// "depth=D,size=S,exp=E,wordlen=L"; any subset, any order
inline Bounds parse_bounds(const std::string& s) {
    Bounds b;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) input_error("--bounds", "expected key=value: " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        long long x;
        try {
            std::size_t used = 0;
            x = std::stoll(val, &used);
            if (used != val.size() || x <= 0) throw std::invalid_argument("positive");
        } catch (const std::exception&) {
            input_error("--bounds", "expected a positive integer for " + key);
        }
        if (key == "depth")
            b.depth = static_cast<std::size_t>(x);
        else if (key == "size")
            b.size = static_cast<std::size_t>(x);
        else if (key == "exp")
            b.exponent = x;
        else if (key == "wordlen")
            b.wordlen = static_cast<std::size_t>(x);
        else
            input_error("--bounds", "unknown key " + key);
        pos = comma + 1;
    }
    return b;
}

// report shapes: {check, status, witnesses, failing_case?, seed} plus
// command-specific extras

inline Json json_of(const VerificationReport& r) {
    Json j{{"check", r.check},
           {"status", r.passed ? "pass" : "fail"},
           {"witnesses", Json::array()},
           {"seed", std::to_string(r.seed)},
           {"trials", std::to_string(r.trials)},
           {"detail", r.detail}};
    if (r.failing_case) j["failing_case"] = *r.failing_case;
    return j;
}

inline Json json_of(const CertifyReport& r, const std::string& check, std::uint64_t seed) {
    Json j{{"check", check},
           {"status", r.outcome == CertifyOutcome::witness ? "pass"
                      : r.outcome == CertifyOutcome::counterexample_flag ? "fail"
                                                                         : "inconclusive"},
           {"outcome", to_string(r.outcome)},
           {"witnesses", Json::array()},
           {"seed", std::to_string(seed)},
           {"detail", r.detail},
           {"independent", std::to_string(r.independent)}};
    if (r.witness) j["witnesses"].push_back(json_of(*r.witness));
    Json probes = Json::array();
    for (const FreeWord& w : r.probes) probes.push_back(json_of(w));
    j["probes"] = std::move(probes);
    if (r.violating_word) j["failing_case"] = json_of(*r.violating_word);
    return j;
}

inline Json json_of(const OrbitElement& e) {
    return Json{{"vector", json_of(e.vec)}, {"word", json_of(e.word)},
                {"seed_index", std::to_string(e.seed)}};
}

inline Json json_of(const VanishingLatticeReport& r, std::uint64_t seed) {
    Json props = Json::array();
    for (const PropertyResult& p : r.properties)
        props.push_back(Json{{"property", p.property},
                             {"status", to_string(p.status)},
                             {"detail", p.detail}});
    Json orbit = Json::array();
    for (const OrbitElement& e : r.orbit.elements) orbit.push_back(json_of(e));
    Json j{{"check", "vanishing-lattice"},
           {"status", to_string(r.status)},
           {"witnesses", Json::array()},
           {"seed", std::to_string(seed)},
           {"properties", std::move(props)},
           {"orbit", std::move(orbit)},
           {"orbit_truncated", r.orbit.truncated},
           {"divisors", json_of(IVec(r.divisors.begin(), r.divisors.end()))}};
    if (r.unit_pair) {
        j["witnesses"].push_back(json_of(r.unit_pair->first));
        j["witnesses"].push_back(json_of(r.unit_pair->second));
    }
    return j;
}

inline Json json_of(const MembershipCertificate& c, std::uint64_t seed) {
    Json j{{"check", "sharp-membership"},
           {"status", c.member ? "pass" : "fail"},
           {"level", std::to_string(c.level)},
           {"witnesses", Json::array()},
           {"seed", std::to_string(seed)}};
    for (const IVec& w : c.witnesses) j["witnesses"].push_back(json_of(w));
    if (c.failing_functional)
        j["failing_case"] = "functional " + std::to_string(*c.failing_functional);
    return j;
}

inline Json json_of(const FrameReport& r, std::uint64_t seed) {
    Json frame = Json::array();
    for (const OrbitElement& e : r.frame) frame.push_back(json_of(e));
    Json j{{"check", "frame"},
           {"status", r.found ? "pass" : "inconclusive"},
           {"witnesses", std::move(frame)},
           {"seed", std::to_string(seed)},
           {"orbit_truncated", r.truncated}};
    if (!r.found) j["detail"] = "no independent frame within the enumeration bounds";
    return j;
}

inline Json json_of(const PowerCertificate& c) {
    return Json{{"found", c.found},        {"exponent", json_of(c.exponent)},
                {"q", json_of(c.q)},       {"m", json_of(c.m)},
                {"index", json_of(c.index)}, {"action", json_of_mat(c.action)},
                {"reason", c.reason}};
}

inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace vanlat
