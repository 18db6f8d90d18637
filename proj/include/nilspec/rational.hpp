#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilspec {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "p/q", optional sign, base 10 only.
inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("bad rational (zero denominator): '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// Exact integer power, negative exponents allowed for nonzero base.
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("0 raised to a negative power");
        return Rat(0);
    }
    Rat acc(1), b = base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) acc = Rat(1) / acc;
    return acc;
}

} // namespace nilspec
