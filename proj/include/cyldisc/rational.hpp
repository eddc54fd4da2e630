#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace cyldisc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Builds num/den in canonical form (den > 0, lowest terms). Throws
// ValidationError on a zero denominator.
Rat make_rat(Int num, Int den);

// Parses "p/q" or a bare integer "p"; sign allowed on the numerator only.
// `path` names the input field in error messages, e.g. "weights[2]".
Rat parse_rat(std::string_view text, const std::string& path = "rational");

// Canonical serialization "p/q" in lowest terms, den always present.
std::string rat_to_string(const Rat& r);

// r^e for e >= 0.
Rat rat_pow(const Rat& r, unsigned e);

double rat_to_double(const Rat& r);

}  // namespace cyldisc
