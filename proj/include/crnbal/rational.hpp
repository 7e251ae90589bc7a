#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace crnbal {

// Exact arithmetic backbone: arbitrary-precision integers and rationals.
// Floating point is confined to ODE solving, simulation and rendering.
using Int = mpz_class;
using Rat = mpq_class;

// x^e for integer e of either sign; requires x != 0 when e < 0.
Rat rat_pow(const Rat& x, std::int64_t e);

// Canonical text form: "5", "-3/4". parse_rational accepts the same forms plus
// decimal literals ("13.5" -> 27/2), which are converted exactly.
std::string rat_string(const Rat& x);
Rat parse_rational(const std::string& text);

inline double rat_double(const Rat& x) { return x.get_d(); }

Int factorial(std::int64_t n);

}  // namespace crnbal
