#pragma once

// Independent brute-force semantics for the minimax reach-avoid objective:
// game-tree values and controllable-predecessor sets. Deliberately shares no
// code path with the dynamic-programming solver beyond the game definition.

#include <cstdint>

#include "raddp/game.hpp"

namespace raddp {

/// Direct min-max recursion over the full game tree from (x, k), without
/// memoization. Out-of-scope states count as top, like in the solver.
/// Throws OracleBudgetExceeded once more than budget nodes were expanded.
Value brute_force_value(const ModalGame& g, const StateVec& x, int k,
                        std::int64_t budget = 20'000'000);

/// Controllable-predecessor recursion: the set of scope states from which
/// some control guarantees, against every disturbance, a finite stage cost
/// and a successor that stays in the stage-(k+1) set; anchored at the
/// goal-minus-unsafe cells in the terminal stage.
Region reach_avoid_set(const ModalGame& g, int k);

}  // namespace raddp
