#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <string>

namespace moduli {

// All lattice and slice arithmetic is exact. cpp_int/cpp_rational are
// header-only and plenty fast at the matrix sizes this project handles.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
    if (is_integer(x)) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace moduli
