#pragma once

#include <cstdint>

namespace matcha::stats {

// Process-wide diagnostic counters. The interpreter is single-threaded; the
// counters exist for tests and the bench command, not for user programs.
extern std::uint64_t evals;          // eval() invocations
extern std::uint64_t cells_forced;   // lazy stream suspensions run
extern std::uint64_t match_calls;    // match_function invocations
extern std::uint64_t max_atom_stack; // deepest matching-atom stack seen

void reset();

}  // namespace matcha::stats
