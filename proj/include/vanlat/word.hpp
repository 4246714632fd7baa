#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vanlat {

// Letter in a free group: generator index (0-based) and nonzero exponent.
struct Letter {
    std::size_t gen;
    long long exp;

    bool operator==(const Letter&) const = default;
};

using FreeWord = std::vector<Letter>;

inline void validate_word(const FreeWord& w, std::size_t generators) {
    for (const Letter& l : w) {
        if (l.gen >= generators) throw std::invalid_argument("word: generator index out of range");
        if (l.exp == 0) throw std::invalid_argument("word: zero exponent");
    }
}

// Merge adjacent letters with equal generator, dropping cancelled ones.
// Confluent, so the result is the unique reduced form.
inline FreeWord free_reduce(const FreeWord& w) {
    FreeWord out;
    for (const Letter& l : w) {
        if (l.exp == 0) continue;
        if (!out.empty() && out.back().gen == l.gen) {
            out.back().exp += l.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

inline FreeWord inverse(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
    return out;
}

inline FreeWord concat(const FreeWord& a, const FreeWord& b) {
    FreeWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline FreeWord word_power(const FreeWord& w, long long e) {
    if (e == 0) return {};
    FreeWord base = e > 0 ? w : inverse(w);
    long long n = e > 0 ? e : -e;
    if (base.size() == 1) return {{base[0].gen, base[0].exp * n}};
    FreeWord out;
    for (long long i = 0; i < n; ++i) out = concat(out, base);
    return out;
}

inline FreeWord conjugate(const FreeWord& u, const FreeWord& w) {
    return concat(concat(u, w), inverse(u));
}

inline std::size_t word_length(const FreeWord& w) {
    std::size_t n = 0;
    for (const Letter& l : w) n += static_cast<std::size_t>(l.exp > 0 ? l.exp : -l.exp);
    return n;
}

}  // namespace vanlat
