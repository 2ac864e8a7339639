#pragma once

#include <stdexcept>
#include <string>

namespace capflow {

// Two points of a triple coincide exactly. Near-coincident triples are
// computed as-is; only exact equality is degenerate.
struct DegenerateTriple : std::domain_error {
  explicit DegenerateTriple(const std::string& what) : std::domain_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Kernel evaluated at the origin.
struct SingularPoint : std::domain_error {
  explicit SingularPoint(const std::string& what) : std::domain_error(what) {}
};

// A computed quantity failed an internal consistency check (e.g. the
// imaginary residue of a permutation sum that must be real).
struct NumericConsistencyError : std::runtime_error {
  explicit NumericConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// A generator or grid would exceed the configured point budget.
struct ResourceGuardError : std::runtime_error {
  explicit ResourceGuardError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace capflow
