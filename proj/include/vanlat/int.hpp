#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vanlat {

using Int = mpz_class;
using Rat = mpq_class;

// mpz_class has no long long constructor
static_assert(sizeof(long) == 8, "LP64 assumed");
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

// Strict decimal form: optional '-', then digits. No whitespace, no '+'.
inline bool is_decimal_string(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    if (s.size() - i > 1 && s[i] == '0') return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline Int parse_int(const std::string& s) {
    if (!is_decimal_string(s))
        throw std::invalid_argument("parse_int: not a decimal integer: '" + s + "'");
    return Int(s, 10);
}

// "p" or "p/q" with q > 0 after canonicalization.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int p = parse_int(s.substr(0, slash));
    Int q = parse_int(s.substr(slash + 1));
    return make_rat(p, q);
}

}  // namespace vanlat
