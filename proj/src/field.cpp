#include "keycast/field.hpp"

#include <string>

namespace keycast {

Field::Field(std::uint32_t modulus) : q(modulus) {
  if (q < 2) throw_error(ErrorKind::Validation, "BadParams", "field modulus must be >= 2");
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0)
      throw_error(ErrorKind::Validation, "BadParams",
                  "field modulus " + std::to_string(q) + " is not prime");
  }
}

}  // namespace keycast
