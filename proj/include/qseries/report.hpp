#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseries {

// First failed coefficient comparison. Coefficients travel as decimal
// strings so arbitrarily large values survive serialization unchanged.
struct Mismatch {
  std::int64_t exponent = 0;
  std::string lhs;
  std::string rhs;
};

// Outcome of comparing two series coefficientwise on the half-open
// exponent window [window_lo, window_hi).
struct VerificationReport {
  std::string identity;
  // (name, rendered value) in declaration order.
  std::vector<std::pair<std::string, std::string>> params;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  bool pass = false;
  std::optional<Mismatch> mismatch;
};

}  // namespace qseries
