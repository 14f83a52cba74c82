#pragma once

#include <stdexcept>
#include <string>

namespace crowdrate {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the support of a closed form (e.g. c_i + d > 1 for upsilon).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Transition kernel requested for a strategy the rating scheme does not define.
class UnsupportedStrategy : public Error {
 public:
  using Error::Error;
};

/// alpha = beta = 0: two absorbing classes, no unique stationary distribution.
class DegenerateChain : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// No grid point admits a sustainable protocol.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text or arguments.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace crowdrate
