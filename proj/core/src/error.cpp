#include "btlab/error.hpp"

namespace btlab {

void throw_budget(const std::string& what, std::size_t requested, std::size_t limit) {
  throw BudgetExceeded(what + ": requested " + std::to_string(requested) + " exceeds budget " +
                       std::to_string(limit));
}

}  // namespace btlab
