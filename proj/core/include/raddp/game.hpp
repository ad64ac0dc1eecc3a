#pragma once

// The modal integer difference game: pluggable discrete dynamics, saturating
// value arithmetic, weighted reach-avoid cost model, move enumeration.

#include <cstdint>
#include <memory>
#include <tuple>
#include <vector>

#include "raddp/lattice.hpp"

namespace raddp {

/// A non-negative integer cost or the absorbing top element.
/// Finite magnitudes live strictly below the game's top_bound; the total
/// order puts top above every finite value.
class Value {
 public:
  constexpr Value() : raw_(0) {}

  static constexpr Value top() { return Value(kTopRaw); }
  static Value finite(std::int64_t v) {
    if (v < 0) throw InputError("Value: negative magnitude");
    if (v >= kTopRaw) throw InputError("Value: magnitude exceeds representable range");
    return Value(v);
  }

  bool is_top() const { return raw_ == kTopRaw; }
  bool is_finite() const { return raw_ != kTopRaw; }
  std::int64_t magnitude() const {
    if (is_top()) throw InputError("Value: magnitude of top");
    return raw_;
  }

  auto operator<=>(const Value&) const = default;

  std::string str() const { return is_top() ? "TOP" : std::to_string(raw_); }

 private:
  static constexpr std::int64_t kTopRaw = std::int64_t(1) << 62;
  constexpr explicit Value(std::int64_t raw) : raw_(raw) {}
  std::int64_t raw_;
};

/// a + b, absorbed into top when either operand is top or the sum would
/// reach top_bound.
Value sat_add(Value a, Value b, std::int64_t top_bound);

/// Which coordinates of the state are positions, velocities, and waypoint
/// counters, plus the speed envelope. The role sets partition 0..m-1.
struct GameSpace {
  ScopeBox ambient;
  std::vector<int> position_dims;
  std::vector<int> velocity_dims;
  std::vector<int> waypoint_dims;
  std::int32_t v_max = 1;
  std::int32_t v_min = 1;

  int dim() const { return ambient.dim(); }
  StateVec position_of(const StateVec& x) const { return project(x, position_dims); }
  void validate() const;

  /// All coordinates are positions; for unit-speed point-mass models.
  static GameSpace all_position(ScopeBox ambient);
  /// First half positions, second half velocities.
  static GameSpace position_velocity(ScopeBox ambient, std::int32_t v_max);
};

/// Evaluation contract for the discretised dynamics: the offset added to x
/// when the controller plays u and the environment plays d at stage k.
/// Implementations must be side-effect free.
class Dynamics {
 public:
  virtual ~Dynamics() = default;
  virtual StateVec offset(const StateVec& x, const StateVec& u, const StateVec& d,
                          int k) const = 0;
  virtual bool time_invariant() const { return true; }
  /// Dimension expected of control and disturbance moves.
  virtual int move_dim() const = 0;
};

/// Point-mass map: position changes by u + d, other coordinates hold.
class KinematicDynamics final : public Dynamics {
 public:
  explicit KinematicDynamics(GameSpace space);
  StateVec offset(const StateVec& x, const StateVec& u, const StateVec& d,
                  int k) const override;
  int move_dim() const override { return static_cast<int>(space_.position_dims.size()); }

 private:
  GameSpace space_;
};

/// v' = clamp(v + u + d, [-v_max, v_max]); position advances by v';
/// waypoint coordinates hold.
class DoubleIntegratorDynamics final : public Dynamics {
 public:
  explicit DoubleIntegratorDynamics(GameSpace space);
  StateVec offset(const StateVec& x, const StateVec& u, const StateVec& d,
                  int k) const override;
  int move_dim() const override { return static_cast<int>(space_.velocity_dims.size()); }

 private:
  GameSpace space_;
};

/// Diagonal quadratic weights for state, control, and disturbance.
struct CostWeights {
  std::vector<std::int32_t> P;  // matches state dimension
  std::vector<std::int32_t> Q;  // matches control dimension
  std::vector<std::int32_t> R;  // matches disturbance dimension

  static CostWeights zero(int state_dim, int move_dim);
};

/// One stage-bounded reach-avoid game over a finite scope.
struct ModalGame {
  GameSpace space;
  ScopeBox scope;
  std::shared_ptr<const Dynamics> dynamics;
  MoveSet U;
  MoveSet D;
  Region goal;    // to be reached
  Region unsafe;  // to be avoided
  CostWeights weights;
  int horizon = 1;                  // N
  std::int64_t top_bound = 1000000; // finite values stay strictly below
  std::int32_t delta = 1;           // robustness margin
  bool shield_crossings = true;     // explicit pre-shield against jumping over unsafe cells

  void validate() const;
  bool in_goal(const StateVec& x) const { return goal.contains(x); }
  bool in_unsafe(const StateVec& x) const { return unsafe.contains(x); }
};

/// Quadratic weight term, exact in 64-bit.
std::int64_t lambda_weight(const ModalGame& g, const StateVec& x, const StateVec& u,
                           const StateVec& d);

/// Single-step successor x + f(x,u,d,k). May lie outside the scope; the
/// caller decides the treatment of such states.
StateVec step(const ModalGame& g, const StateVec& x, const StateVec& u,
              const StateVec& d, int k);

/// All |U|*|D| move pairs with their successors.
std::vector<std::tuple<StateVec, StateVec, StateVec>> successors(const ModalGame& g,
                                                                 const StateVec& x, int k);

/// Stage cost: zero inside the goal minus the unsafe set; top when x is
/// unsafe or when the move's continuous completion touches an unsafe cell
/// anywhere past its start (crossing pre-shield); the weight term otherwise,
/// saturated at top.
Value stage_cost(const ModalGame& g, const StateVec& x, const StateVec& u,
                 const StateVec& d, int k);

/// Terminal cost: zero inside goal minus unsafe, top elsewhere.
Value terminal_cost(const ModalGame& g, const StateVec& x);

/// Smallest Lipschitz-style step bound: the sup norm of the dynamics over
/// scope x U x D x stages.
std::int32_t step_bound(const ModalGame& g);

}  // namespace raddp
