// Exact arithmetic in a prime field F_q.  Elements are canonical residues in
// [0, q) stored as plain uint32_t; the Field object carries the modulus and is
// passed explicitly to every operation.  All arithmetic is integer-exact; no
// floating point appears anywhere on these paths.
#pragma once

#include <cstdint>

#include "keycast/errors.hpp"

namespace keycast {

struct Field {
  std::uint32_t q;

  // Checks primality at construction (trial division; moduli are desk-scale).
  explicit Field(std::uint32_t modulus);

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + q - b;
  }

  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q - a; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % q, base = a % q;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Multiplicative inverse via Fermat's little theorem; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const {
    if (a % q == 0)
      throw_error(ErrorKind::Validation, "ZeroInverse", "0 has no multiplicative inverse");
    return pow(a, q - 2);
  }

  std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % q); }
};

}  // namespace keycast
