#include "raddp/oracle.hpp"

#include <algorithm>

namespace raddp {

namespace {

Value brute_rec(const ModalGame& g, const StateVec& x, int k, std::int64_t budget,
                std::int64_t& nodes) {
  if (++nodes > budget) throw OracleBudgetExceeded("brute_force_value: node budget exceeded");
  if (!g.scope.contains(x)) return Value::top();
  if (k == g.horizon) return terminal_cost(g, x);
  Value best = Value::top();
  for (const auto& u : g.U) {
    Value worst = Value::finite(0);
    for (const auto& d : g.D) {
      Value l = stage_cost(g, x, u, d, k);
      Value cont = brute_rec(g, step(g, x, u, d, k), k + 1, budget, nodes);
      Value total = sat_add(l, cont, g.top_bound);
      worst = std::max(worst, total);
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

Value brute_force_value(const ModalGame& g, const StateVec& x, int k, std::int64_t budget) {
  if (k < 1 || k > g.horizon) throw InputError("brute_force_value: stage out of range");
  std::int64_t nodes = 0;
  return brute_rec(g, x, k, budget, nodes);
}

Region reach_avoid_set(const ModalGame& g, int k) {
  if (k < 1 || k > g.horizon) throw InputError("reach_avoid_set: stage out of range");
  Region current(g.scope);
  for (std::size_t i = 0; i < g.scope.cell_count(); ++i) {
    StateVec x = g.scope.state_at(i);
    if (g.in_goal(x) && !g.in_unsafe(x)) current.insert(x);
  }
  for (int stage = g.horizon; stage > k; --stage) {
    Region prev(g.scope);
    for (std::size_t i = 0; i < g.scope.cell_count(); ++i) {
      StateVec x = g.scope.state_at(i);
      if (g.in_unsafe(x)) continue;
      bool winning = false;
      for (const auto& u : g.U) {
        bool safe_for_all_d = true;
        for (const auto& d : g.D) {
          if (stage_cost(g, x, u, d, stage).is_top()) {
            safe_for_all_d = false;
            break;
          }
          StateVec succ = step(g, x, u, d, stage);
          if (!g.scope.contains(succ) || !current.contains(succ)) {
            safe_for_all_d = false;
            break;
          }
        }
        if (safe_for_all_d) {
          winning = true;
          break;
        }
      }
      if (winning) prev.insert(x);
    }
    current = std::move(prev);
  }
  return current;
}

}  // namespace raddp
