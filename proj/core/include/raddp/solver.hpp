#pragma once

// Shielded backward minimax value iteration: dense stage-indexed value and
// argmin tables, winning regions, fixpoint approximation, policy extraction.

#include <cstdint>
#include <optional>
#include <vector>

#include "raddp/game.hpp"

namespace raddp {

/// Dense map (scope cell x stage 1..N) -> value, plus the minimizing control
/// move per cell and stage and the maximizing disturbance per (cell, stage,
/// control) for adversary replay.
class ValueTable {
 public:
  ValueTable(ModalGame game);

  const ModalGame& game() const { return game_; }
  int horizon() const { return game_.horizon; }
  std::size_t cell_count() const { return game_.scope.cell_count(); }

  Value value(const StateVec& x, int k) const;
  Value value_by_index(std::size_t cell, int k) const;

  /// Minimizing control move, absent on top-valued cells and in the
  /// terminal row.
  std::optional<StateVec> argmin(const StateVec& x, int k) const;
  std::optional<std::size_t> argmin_index(std::size_t cell, int k) const;

  /// Maximizing disturbance recorded for (x, k, u); absent in the terminal
  /// row.
  std::optional<StateVec> worst_disturbance(const StateVec& x, int k,
                                            const StateVec& u) const;

  /// Fault-injection hook for table diagnostics; not used by the solver.
  void overwrite_value(const StateVec& x, int k, Value v);

  // Raw row access for the solver and exporters.
  void set(std::size_t cell, int k, Value v, std::int32_t argmin_u);
  void set_worst(std::size_t cell, int k, std::size_t u_idx, std::int32_t d_idx);
  void copy_row(int from_k, int to_k);
  std::size_t finite_count(int k) const;

 private:
  std::size_t vidx(std::size_t cell, int k) const { return std::size_t(k - 1) * cells_ + cell; }
  void check_query(const StateVec& x, int k) const;

  ModalGame game_;
  std::size_t cells_;
  std::vector<Value> values_;
  std::vector<std::int32_t> argmin_;   // index into U, -1 when undefined
  std::vector<std::int32_t> worst_d_;  // index into D, -1 when undefined
};

/// How the backward iteration may terminate before stage 1.
struct FixpointMode {
  bool enabled = false;
  StateVec anchor;  // the state whose robust neighborhood is watched

  static FixpointMode off() { return {}; }
  static FixpointMode approximate(StateVec x0) { return {true, std::move(x0)}; }
};

struct Solution {
  ValueTable table;
  std::optional<int> fixpoint_stage;  // stage where the approximation fired
  int first_stage = 1;
  int last_stage = 1;
};

enum class PolicyMode { NonStationary, QuasiStationary, Stationary };

/// A controller extracted from a solution. Self-contained: owns a copy of
/// the argmin rows it answers from.
class Policy {
 public:
  PolicyMode mode() const { return mode_; }
  std::optional<int> anchor_stage() const { return anchor_; }

  /// Control move for (x, k); nothing outside the relevant winning region.
  std::optional<StateVec> lookup(const StateVec& x, int k) const;

 private:
  friend Policy extract_policy(const Solution& sol, PolicyMode mode);
  PolicyMode mode_ = PolicyMode::NonStationary;
  std::optional<int> anchor_;
  ScopeBox scope_;
  int horizon_ = 1;
  std::vector<StateVec> controls_;              // U in sorted order
  std::vector<std::int32_t> argmin_;            // per (stage-1)*cells + cell
};

/// Number of worker threads the row backup may use; values below 2 keep the
/// solve single-threaded.
void set_solver_threads(int threads);
int solver_threads();

/// Backward minimax dynamic programming. Row N carries the terminal cost;
/// each earlier row is the min over controls of the max over disturbances of
/// the saturated stage cost plus continuation value; out-of-scope successors
/// count as top. With an approximate fixpoint mode the iteration stops at
/// the largest stage where the winning region size repeats or the anchor's
/// robust neighborhood is finite, and copies that row downward.
/// Refuses with StageCostUnbounded when N times the largest weight term can
/// reach top_bound.
Solution ddp_solve(const ModalGame& g, const FixpointMode& mode = FixpointMode::off());

/// Stored value; input error outside the scope or computed stages.
Value value(const Solution& sol, const StateVec& x, int k);

/// Cells with finite value at stage k.
Region winning_region(const Solution& sol, int k);

Policy extract_policy(const Solution& sol, PolicyMode mode);

/// Recomputation report for the discrete Hamilton-Jacobi-Isaacs identity at
/// (x, k): the stored row k-1 value against the min-max backup over row k.
struct HjiResidual {
  Value stored;      // V(x, k-1)
  Value recomputed;  // min over u, max over d of L + V(successor, k)
  bool exact() const { return stored == recomputed; }
};

HjiResidual hji_residual(const Solution& sol, const StateVec& x, int k);

/// Approximate-fixpoint test at stage k on a solved table: the winning
/// region size repeats at k+1, or some stage at or above k values the whole
/// in-scope robust neighborhood of x0 finitely. An anchor neighborhood with
/// no in-scope cells is treated as not reached.
bool fixpoint_reached(const Solution& sol, int k, const StateVec& x0);

}  // namespace raddp
