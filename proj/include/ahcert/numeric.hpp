#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ahcert {

// All sequence/certificate arithmetic is exact: arbitrary-precision integers
// and rationals throughout, floating point only in the sampled diagnostics.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Exec { Serial, Parallel };

Int pow2(int e);

// C(n, k), falling-product form. k is a machine integer; n may be huge.
Int binomial(const Int& n, std::int64_t k);

// Canonical "numerator/denominator" rendering used in every JSON artifact.
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& text);

std::int64_t to_i64(const Int& v);  // throws when out of range

// SplitMix64: the seed-expansion primitive behind every sampled kernel.
// Streams derived via mix_seed are stable across platforms and build modes.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
double unit_double(std::uint64_t bits);  // [0, 1)

}  // namespace ahcert
