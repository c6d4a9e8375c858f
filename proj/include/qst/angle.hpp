#pragma once

// Angle literals: "pi", "2pi", "a/b pi", "a/bpi", "pi/b", "a pi/b", and
// plain decimals (radians). Rational multiples of pi are kept exact.

#include <optional>
#include <string_view>

#include "qst/family.hpp"

namespace qst {

struct Angle {
  double radians = 0.0;
  std::optional<PiFraction> pi_fraction;  // reduced, den > 0
};

/// DomainError on anything else.
Angle parse_angle(std::string_view text);

}  // namespace qst
