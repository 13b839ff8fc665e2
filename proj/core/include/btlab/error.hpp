#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace btlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or a value that violates a documented invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed one of the configured budgets. Callers are
/// expected to lower their request (precision, rank, ...) and retry.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a ring / rank / vertex set do not.
class Mismatch : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed. Never raised on correct code paths.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Resource limits shared by the enumeration-heavy operations.
struct Budget {
  std::size_t max_ring_size = 2048;        // elements of O_R with full tables
  std::size_t max_vertices = 20000;        // vertices in a ball or graph
  std::size_t max_candidates = 5'000'000;  // lattice candidates before dedup
  std::size_t max_search_nodes = 2'000'000;  // backtracking nodes
};

[[noreturn]] void throw_budget(const std::string& what, std::size_t requested, std::size_t limit);

}  // namespace btlab
