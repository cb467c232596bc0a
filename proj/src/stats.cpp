#include "matcha/stats.hpp"

namespace matcha::stats {

std::uint64_t evals = 0;
std::uint64_t cells_forced = 0;
std::uint64_t match_calls = 0;
std::uint64_t max_atom_stack = 0;

void reset() {
  evals = 0;
  cells_forced = 0;
  match_calls = 0;
  max_atom_stack = 0;
}

}  // namespace matcha::stats
