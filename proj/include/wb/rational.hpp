#pragma once
// Exact rational scalars backed by GMP.
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace wb {

using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", "-p/q". Decimals are refused on purpose.
Rational parse_rational(const std::string& s);

// Lowest terms, "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& r);

inline Rational sq(const Rational& r) { return r * r; }

}  // namespace wb
