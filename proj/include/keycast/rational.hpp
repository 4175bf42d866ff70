// Exact non-negative rationals for rate accounting.  Numerators are key
// symbol counts, denominators are edge-use counts; both stay well inside
// 64 bits at desk scale.
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace keycast {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    Rational r{n, d};
    if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
    std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    if (g > 1) { r.num /= g; r.den /= g; }
    if (r.num == 0) r.den = 1;
    return r;
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace keycast
