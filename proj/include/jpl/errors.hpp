#pragma once

#include <stdexcept>
#include <string>

namespace jpl {

// Malformed text input: matrix literals, ordering strings, certificates.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adjacent pairs share an index, so swapping them is not an admissible transposition.
class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

class BrokenCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An ordering that none of the class tests or searches can place.
class ClassificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotParallelOrdering : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |2 a_ij / (a_ii + a_jj)| >= 1 at a hyperbolic pivot: the pair (A, J) is not definite.
class HyperbolicBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jpl
