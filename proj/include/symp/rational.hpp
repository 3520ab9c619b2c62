#pragma once
#include <gmpxx.h>
#include <string>

namespace symp {

// Exact rational scalar.  GMP keeps mpq_class canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) { Rational r(n, d); r.canonicalize(); return r; }

inline std::string rat_string(const Rational& r) { return r.get_str(); }

// Parses "p" or "p/q"; throws std::invalid_argument on garbage.
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace symp
