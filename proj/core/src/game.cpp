#include "raddp/game.hpp"

#include <algorithm>

namespace raddp {

Value sat_add(Value a, Value b, std::int64_t top_bound) {
  if (a.is_top() || b.is_top()) return Value::top();
  if (a.magnitude() >= top_bound - b.magnitude()) return Value::top();
  return Value::finite(a.magnitude() + b.magnitude());
}

void GameSpace::validate() const {
  std::vector<bool> seen(dim(), false);
  auto mark = [&](const std::vector<int>& dims) {
    for (int d : dims) {
      if (d < 0 || d >= dim()) throw InputError("GameSpace: role index out of range");
      if (seen[d]) throw InputError("GameSpace: coordinate has two roles");
      seen[d] = true;
    }
  };
  mark(position_dims);
  mark(velocity_dims);
  mark(waypoint_dims);
  for (bool s : seen)
    if (!s) throw InputError("GameSpace: coordinate without a role");
  if (v_min < 1 || v_max < v_min) throw InputError("GameSpace: requires v_max >= v_min >= 1");
}

GameSpace GameSpace::all_position(ScopeBox ambient) {
  GameSpace s;
  s.position_dims.resize(ambient.dim());
  for (int i = 0; i < ambient.dim(); ++i) s.position_dims[i] = i;
  s.ambient = std::move(ambient);
  return s;
}

GameSpace GameSpace::position_velocity(ScopeBox ambient, std::int32_t v_max) {
  if (ambient.dim() % 2 != 0)
    throw InputError("GameSpace: position/velocity split needs an even dimension");
  GameSpace s;
  int half = ambient.dim() / 2;
  for (int i = 0; i < half; ++i) s.position_dims.push_back(i);
  for (int i = half; i < ambient.dim(); ++i) s.velocity_dims.push_back(i);
  s.v_max = v_max;
  s.ambient = std::move(ambient);
  return s;
}

KinematicDynamics::KinematicDynamics(GameSpace space) : space_(std::move(space)) {
  space_.validate();
}

StateVec KinematicDynamics::offset(const StateVec& x, const StateVec& u, const StateVec& d,
                                   int) const {
  StateVec off(x.size(), 0);
  for (std::size_t j = 0; j < space_.position_dims.size(); ++j)
    off[space_.position_dims[j]] = u[j] + d[j];
  return off;
}

DoubleIntegratorDynamics::DoubleIntegratorDynamics(GameSpace space) : space_(std::move(space)) {
  space_.validate();
  if (space_.velocity_dims.size() != space_.position_dims.size())
    throw InputError("DoubleIntegratorDynamics: needs one velocity per position");
}

StateVec DoubleIntegratorDynamics::offset(const StateVec& x, const StateVec& u,
                                          const StateVec& d, int) const {
  StateVec off(x.size(), 0);
  for (std::size_t j = 0; j < space_.velocity_dims.size(); ++j) {
    int vd = space_.velocity_dims[j];
    std::int32_t v_next = std::clamp<std::int32_t>(x[vd] + u[j] + d[j], -space_.v_max, space_.v_max);
    off[vd] = v_next - x[vd];
    off[space_.position_dims[j]] = v_next;
  }
  return off;
}

CostWeights CostWeights::zero(int state_dim, int move_dim) {
  return CostWeights{std::vector<std::int32_t>(state_dim, 0),
                     std::vector<std::int32_t>(move_dim, 0),
                     std::vector<std::int32_t>(move_dim, 0)};
}

void ModalGame::validate() const {
  space.validate();
  if (!dynamics) throw InputError("ModalGame: missing dynamics");
  if (horizon < 1) throw InputError("ModalGame: horizon must be positive");
  if (top_bound < 1) throw InputError("ModalGame: top_bound must be positive");
  if (delta < 1) throw InputError("ModalGame: delta must be positive");
  if (!U.contains_zero() || !D.contains_zero())
    throw InputError("ModalGame: player ranges must contain the zero move");
  if (U.dim() != dynamics->move_dim() || D.dim() != dynamics->move_dim())
    throw InputError("ModalGame: move dimension does not match the dynamics");
  if (weights.P.size() != std::size_t(space.dim()) ||
      weights.Q.size() != std::size_t(U.dim()) || weights.R.size() != std::size_t(D.dim()))
    throw InputError("ModalGame: weight dimensions do not match");
  bool goal_reachable = false;
  for (const auto& cell : goal) {
    if (!scope.contains(cell)) throw InputError("ModalGame: goal cell outside scope");
    if (!unsafe.contains(cell)) goal_reachable = true;
  }
  if (!goal_reachable) throw InputError("ModalGame: goal minus unsafe is empty");
}

std::int64_t lambda_weight(const ModalGame& g, const StateVec& x, const StateVec& u,
                           const StateVec& d) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += std::int64_t(g.weights.P[j]) * x[j] * x[j];
  for (std::size_t j = 0; j < u.size(); ++j) s += std::int64_t(g.weights.Q[j]) * u[j] * u[j];
  for (std::size_t j = 0; j < d.size(); ++j) s += std::int64_t(g.weights.R[j]) * d[j] * d[j];
  return s;
}

namespace {

void require_moves(const ModalGame& g, const StateVec& u, const StateVec& d) {
  if (!g.U.contains(u)) throw InputError("step: control move " + to_string(u) + " not in U");
  if (!g.D.contains(d)) throw InputError("step: disturbance move " + to_string(d) + " not in D");
}

}  // namespace

StateVec step(const ModalGame& g, const StateVec& x, const StateVec& u, const StateVec& d,
              int k) {
  require_moves(g, u, d);
  return add(x, g.dynamics->offset(x, u, d, k));
}

std::vector<std::tuple<StateVec, StateVec, StateVec>> successors(const ModalGame& g,
                                                                 const StateVec& x, int k) {
  std::vector<std::tuple<StateVec, StateVec, StateVec>> out;
  out.reserve(g.U.size() * g.D.size());
  for (const auto& u : g.U)
    for (const auto& d : g.D)
      out.emplace_back(u, d, add(x, g.dynamics->offset(x, u, d, k)));
  return out;
}

Value stage_cost(const ModalGame& g, const StateVec& x, const StateVec& u, const StateVec& d,
                 int k) {
  require_moves(g, u, d);
  if (g.in_goal(x) && !g.in_unsafe(x)) return Value::finite(0);
  if (g.in_unsafe(x)) return Value::top();
  if (!g.unsafe.empty()) {
    StateVec off = g.dynamics->offset(x, u, d, k);
    StateVec landing = add(x, off);
    if (g.in_unsafe(landing)) return Value::top();
    if (g.shield_crossings && norm_inf(off) > 1) {
      Trajectory swept = continuous_completion({x, landing});
      for (std::size_t i = 1; i + 1 < swept.size(); ++i)
        if (g.in_unsafe(swept[i])) return Value::top();
    }
  }
  std::int64_t lam = lambda_weight(g, x, u, d);
  if (lam >= g.top_bound) return Value::top();
  return Value::finite(lam);
}

Value terminal_cost(const ModalGame& g, const StateVec& x) {
  if (g.in_goal(x) && !g.in_unsafe(x)) return Value::finite(0);
  return Value::top();
}

std::int32_t step_bound(const ModalGame& g) {
  std::int32_t bound = 0;
  int last_stage = g.dynamics->time_invariant() ? 1 : g.horizon;
  for (int k = 1; k <= last_stage; ++k) {
    for (std::size_t i = 0; i < g.scope.cell_count(); ++i) {
      StateVec x = g.scope.state_at(i);
      for (const auto& u : g.U)
        for (const auto& d : g.D)
          bound = std::max(bound, norm_inf(g.dynamics->offset(x, u, d, k)));
    }
  }
  return bound;
}

}  // namespace raddp
