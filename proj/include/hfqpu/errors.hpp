#pragma once

#include <stdexcept>

namespace hfqpu {

// Numerical precondition failed: non-Hermitian generator, non-unitary
// operand, runaway step count. Distinct from bad user input so the CLI can
// map it to its own exit code.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hfqpu
