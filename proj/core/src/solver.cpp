#include "raddp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace raddp {

namespace {

int g_threads = 1;

/// In-scope cells of the delta-neighborhood of x0; empty when none.
std::vector<std::size_t> robust_neighborhood(const ModalGame& g, const StateVec& x0) {
  std::vector<std::size_t> cells;
  if (x0.size() != std::size_t(g.scope.dim())) return cells;
  MoveSet box = MoveSet::box_uniform(g.scope.dim(), g.delta);
  for (const auto& off : box) {
    StateVec x = add(x0, off);
    if (g.scope.contains(x)) cells.push_back(g.scope.index_of(x));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

void parallel_cells(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk) {
  int workers = std::max(1, g_threads);
  if (workers == 1 || n < 64) {
    chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = std::min(n, std::size_t(w) * per);
    std::size_t hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back(chunk, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void set_solver_threads(int threads) { g_threads = std::max(1, threads); }
int solver_threads() { return g_threads; }

ValueTable::ValueTable(ModalGame game)
    : game_(std::move(game)), cells_(game_.scope.cell_count()) {
  std::size_t n = cells_ * std::size_t(game_.horizon);
  values_.assign(n, Value::top());
  argmin_.assign(n, -1);
  worst_d_.assign(n * game_.U.size(), -1);
}

void ValueTable::check_query(const StateVec& x, int k) const {
  if (!game_.scope.contains(x))
    throw InputError("ValueTable: state " + to_string(x) + " outside scope");
  if (k < 1 || k > game_.horizon)
    throw InputError("ValueTable: stage " + std::to_string(k) + " outside 1.." +
                     std::to_string(game_.horizon));
}

Value ValueTable::value(const StateVec& x, int k) const {
  check_query(x, k);
  return values_[vidx(game_.scope.index_of(x), k)];
}

Value ValueTable::value_by_index(std::size_t cell, int k) const {
  return values_[vidx(cell, k)];
}

std::optional<StateVec> ValueTable::argmin(const StateVec& x, int k) const {
  check_query(x, k);
  auto idx = argmin_[vidx(game_.scope.index_of(x), k)];
  if (idx < 0) return std::nullopt;
  return game_.U[idx];
}

std::optional<std::size_t> ValueTable::argmin_index(std::size_t cell, int k) const {
  auto idx = argmin_[vidx(cell, k)];
  if (idx < 0) return std::nullopt;
  return std::size_t(idx);
}

std::optional<StateVec> ValueTable::worst_disturbance(const StateVec& x, int k,
                                                      const StateVec& u) const {
  check_query(x, k);
  std::size_t u_idx = game_.U.size();
  for (std::size_t i = 0; i < game_.U.size(); ++i)
    if (game_.U[i] == u) u_idx = i;
  if (u_idx == game_.U.size()) throw InputError("ValueTable: move not in U");
  auto d_idx = worst_d_[vidx(game_.scope.index_of(x), k) * game_.U.size() + u_idx];
  if (d_idx < 0) return std::nullopt;
  return game_.D[d_idx];
}

void ValueTable::overwrite_value(const StateVec& x, int k, Value v) {
  check_query(x, k);
  values_[vidx(game_.scope.index_of(x), k)] = v;
}

void ValueTable::set(std::size_t cell, int k, Value v, std::int32_t argmin_u) {
  values_[vidx(cell, k)] = v;
  argmin_[vidx(cell, k)] = argmin_u;
}

void ValueTable::set_worst(std::size_t cell, int k, std::size_t u_idx, std::int32_t d_idx) {
  worst_d_[vidx(cell, k) * game_.U.size() + u_idx] = d_idx;
}

void ValueTable::copy_row(int from_k, int to_k) {
  std::size_t src = vidx(0, from_k), dst = vidx(0, to_k);
  std::copy_n(values_.begin() + src, cells_, values_.begin() + dst);
  std::copy_n(argmin_.begin() + src, cells_, argmin_.begin() + dst);
  std::copy_n(worst_d_.begin() + src * game_.U.size(), cells_ * game_.U.size(),
              worst_d_.begin() + dst * game_.U.size());
}

std::size_t ValueTable::finite_count(int k) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cells_; ++c)
    if (values_[vidx(c, k)].is_finite()) ++n;
  return n;
}

Solution ddp_solve(const ModalGame& g, const FixpointMode& mode) {
  g.validate();

  // Necessary boundedness of accumulated weight terms: N * sup lambda < top.
  std::int64_t max_lambda = 0;
  for (std::size_t i = 0; i < g.scope.cell_count(); ++i) {
    StateVec x = g.scope.state_at(i);
    for (const auto& u : g.U)
      for (const auto& d : g.D) max_lambda = std::max(max_lambda, lambda_weight(g, x, u, d));
  }
  if (std::int64_t(g.horizon) * max_lambda >= g.top_bound)
    throw StageCostUnbounded("ddp_solve: horizon times max stage cost reaches top_bound (" +
                             std::to_string(g.horizon) + " * " + std::to_string(max_lambda) +
                             " >= " + std::to_string(g.top_bound) + ")");

  ValueTable table(g);
  const std::size_t cells = g.scope.cell_count();
  const int n_stages = g.horizon;

  for (std::size_t c = 0; c < cells; ++c)
    table.set(c, n_stages, terminal_cost(g, g.scope.state_at(c)), -1);

  // Precompute per-control weight contributions for the argmin tie-break.
  std::vector<std::int64_t> u_weight(g.U.size(), 0);
  for (std::size_t ui = 0; ui < g.U.size(); ++ui)
    for (std::size_t j = 0; j < g.U[ui].size(); ++j)
      u_weight[ui] += std::int64_t(g.weights.Q[j]) * g.U[ui][j] * g.U[ui][j];

  std::vector<std::size_t> nbhd =
      mode.enabled ? robust_neighborhood(g, mode.anchor) : std::vector<std::size_t>{};
  bool nbhd_finite_somewhere = false;
  std::optional<int> fixpoint_stage;

  for (int k = n_stages - 1; k >= 1; --k) {
    // Row k from row k+1; cost and dynamics evaluated at stage k+1.
    parallel_cells(cells, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t c = lo; c < hi; ++c) {
        StateVec x = g.scope.state_at(c);
        Value best = Value::top();
        std::int32_t best_u = -1;
        std::int64_t best_key = 0;
        for (std::size_t ui = 0; ui < g.U.size(); ++ui) {
          const StateVec& u = g.U[ui];
          Value worst = Value::finite(0);
          std::int32_t worst_d = -1;
          for (std::size_t di = 0; di < g.D.size(); ++di) {
            const StateVec& d = g.D[di];
            Value l = stage_cost(g, x, u, d, k + 1);
            StateVec succ = step(g, x, u, d, k + 1);
            Value cont = g.scope.contains(succ)
                             ? table.value_by_index(g.scope.index_of(succ), k + 1)
                             : Value::top();
            Value total = sat_add(l, cont, g.top_bound);
            if (worst_d < 0 || total >= worst) {  // ties keep the largest d
              worst = total;
              worst_d = std::int32_t(di);
            }
          }
          table.set_worst(c, k, ui, worst_d);
          if (worst < best ||
              (worst == best && best_u >= 0 && u_weight[ui] < best_key)) {
            best = worst;
            best_u = std::int32_t(ui);
            best_key = u_weight[ui];
          } else if (best_u < 0 && worst == best) {
            best_u = std::int32_t(ui);
            best_key = u_weight[ui];
          }
        }
        table.set(c, k, best, best.is_finite() ? best_u : -1);
      }
    });

    if (mode.enabled) {
      if (!nbhd_finite_somewhere && !nbhd.empty()) {
        bool all_finite = true;
        for (auto c : nbhd)
          if (table.value_by_index(c, k).is_top()) {
            all_finite = false;
            break;
          }
        nbhd_finite_somewhere = all_finite;
      }
      bool size_repeat = table.finite_count(k) == table.finite_count(k + 1);
      if (size_repeat || nbhd_finite_somewhere) {
        fixpoint_stage = k;
        for (int lower = k - 1; lower >= 1; --lower) table.copy_row(k, lower);
        break;
      }
    }
  }

  Solution sol{std::move(table), fixpoint_stage, 1, n_stages};
  return sol;
}

Value value(const Solution& sol, const StateVec& x, int k) { return sol.table.value(x, k); }

Region winning_region(const Solution& sol, int k) {
  if (k < sol.first_stage || k > sol.last_stage)
    throw InputError("winning_region: stage outside computed interval");
  const auto& scope = sol.table.game().scope;
  Region r(scope);
  for (std::size_t c = 0; c < scope.cell_count(); ++c)
    if (sol.table.value_by_index(c, k).is_finite()) r.insert(scope.state_at(c));
  return r;
}

Policy extract_policy(const Solution& sol, PolicyMode mode) {
  const ModalGame& g = sol.table.game();
  Policy p;
  p.mode_ = mode;
  p.scope_ = g.scope;
  p.horizon_ = g.horizon;
  p.controls_.assign(g.U.begin(), g.U.end());

  auto copy_rows = [&](int only_stage) {
    std::size_t cells = g.scope.cell_count();
    p.argmin_.assign(cells * std::size_t(g.horizon), -1);
    for (int k = 1; k <= g.horizon; ++k) {
      int src = only_stage > 0 ? only_stage : k;
      for (std::size_t c = 0; c < cells; ++c) {
        auto a = sol.table.argmin_index(c, src);
        p.argmin_[std::size_t(k - 1) * cells + c] = a ? std::int32_t(*a) : -1;
      }
    }
  };

  switch (mode) {
    case PolicyMode::NonStationary:
      copy_rows(0);
      break;
    case PolicyMode::QuasiStationary: {
      if (!sol.fixpoint_stage)
        throw ModeUnavailable("extract_policy: no approximate fixpoint was reached");
      p.anchor_ = sol.fixpoint_stage;
      copy_rows(*sol.fixpoint_stage);
      break;
    }
    case PolicyMode::Stationary: {
      std::optional<int> exact;
      for (int k = sol.last_stage - 1; k >= sol.first_stage; --k) {
        bool same = true;
        for (std::size_t c = 0; c < g.scope.cell_count(); ++c)
          if (sol.table.value_by_index(c, k) != sol.table.value_by_index(c, k + 1)) {
            same = false;
            break;
          }
        if (same) exact = k;
      }
      if (!exact) throw ModeUnavailable("extract_policy: no exact fixpoint in the table");
      p.anchor_ = exact;
      copy_rows(*exact);
      break;
    }
  }
  return p;
}

std::optional<StateVec> Policy::lookup(const StateVec& x, int k) const {
  if (!scope_.contains(x) || k < 1 || k > horizon_) return std::nullopt;
  std::size_t cells = scope_.cell_count();
  auto idx = argmin_[std::size_t(k - 1) * cells + scope_.index_of(x)];
  if (idx < 0) return std::nullopt;
  return controls_[idx];
}

HjiResidual hji_residual(const Solution& sol, const StateVec& x, int k) {
  const ModalGame& g = sol.table.game();
  if (k < 2 || k > sol.last_stage) throw InputError("hji_residual: stage outside 2..N");
  Value best = Value::top();
  for (const auto& u : g.U) {
    Value worst = Value::finite(0);
    for (const auto& d : g.D) {
      Value l = stage_cost(g, x, u, d, k);
      StateVec succ = step(g, x, u, d, k);
      Value cont = g.scope.contains(succ) ? sol.table.value(succ, k) : Value::top();
      worst = std::max(worst, sat_add(l, cont, g.top_bound));
    }
    best = std::min(best, worst);
  }
  return HjiResidual{sol.table.value(x, k - 1), best};
}

bool fixpoint_reached(const Solution& sol, int k, const StateVec& x0) {
  if (k + 1 > sol.last_stage || k < sol.first_stage)
    throw InputError("fixpoint_reached: k+1 outside computed interval");
  const ModalGame& g = sol.table.game();
  if (sol.table.finite_count(k) == sol.table.finite_count(k + 1)) return true;
  std::vector<std::size_t> nbhd = robust_neighborhood(g, x0);
  if (nbhd.empty()) return false;  // no in-scope neighborhood: conservative
  for (int stage = k; stage <= sol.last_stage; ++stage) {
    bool all_finite = true;
    for (auto c : nbhd)
      if (sol.table.value_by_index(c, stage).is_top()) {
        all_finite = false;
        break;
      }
    if (all_finite) return true;
  }
  return false;
}

}  // namespace raddp
