#pragma once

#include <stdexcept>
#include <string>

namespace tlen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAnAutomorphism : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct NotFoundWithinBudget : Error {
  using Error::Error;
};
struct NoWitnessFound : Error {
  using Error::Error;
};
struct NotCertifiedExponential : Error {
  using Error::Error;
};

}  // namespace tlen
