#include "ahcert/numeric.hpp"

#include <limits>
#include <stdexcept>

namespace ahcert {

Int pow2(int e) {
  if (e < 0) throw std::invalid_argument("pow2: negative exponent");
  Int one = 1;
  return one << e;
}

Int binomial(const Int& n, std::int64_t k) {
  if (k < 0 || n < 0) return 0;
  if (Int(k) > n) return 0;
  // C(n, k) = C(n, n-k); keep the loop short when n is small.
  if (n < std::numeric_limits<std::int64_t>::max()) {
    const std::int64_t ni = n.convert_to<std::int64_t>();
    if (ni - k < k) k = ni - k;
  }
  Int num = 1;
  for (std::int64_t t = 1; t <= k; ++t) {
    num *= n - k + t;
    num /= t;  // exact: num is C(n-k+t, t) * t! / t! at each step
  }
  return num;
}

std::string rat_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rat rat_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    const Int num(text.substr(0, slash));
    const Int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("value exceeds 64-bit range: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + (stream << 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b + stream);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace ahcert
