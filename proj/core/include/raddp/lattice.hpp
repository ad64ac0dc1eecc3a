#pragma once

// Integer lattice geometry: state vectors, scope boxes, move sets, regions,
// Minkowski dilation, and discrete trajectories with continuity predicates.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "raddp/errors.hpp"

namespace raddp {

/// A lattice point or an offset between lattice points.
using StateVec = std::vector<std::int32_t>;

/// A finite sequence of lattice points sharing one dimension.
using Trajectory = std::vector<StateVec>;

StateVec add(const StateVec& a, const StateVec& b);
StateVec sub(const StateVec& a, const StateVec& b);

/// Chebyshev (sup-norm) distance between two points of equal dimension.
std::int32_t chebyshev(const StateVec& a, const StateVec& b);

/// Sup norm of an offset vector.
std::int32_t norm_inf(const StateVec& v);

std::int64_t dot(const StateVec& a, const StateVec& b);

/// Squared Euclidean norm, exact in 64-bit.
std::int64_t norm2_sq(const StateVec& v);

/// Renders "(a,b,c)".
std::string to_string(const StateVec& v);

/// Projection onto a coordinate subset, in the order given by dims.
StateVec project(const StateVec& x, const std::vector<int>& dims);

/// Largest integer r with r*r <= n. Requires n >= 0.
std::int64_t isqrt(std::int64_t n);

/// An axis-aligned box of lattice cells with inclusive per-component bounds.
class ScopeBox {
 public:
  ScopeBox() = default;
  ScopeBox(StateVec lo, StateVec hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const StateVec& lo() const { return lo_; }
  const StateVec& hi() const { return hi_; }

  bool contains(const StateVec& x) const;
  bool contains_box(const ScopeBox& inner) const;

  /// Number of cells; validated against the addressable index range.
  std::size_t cell_count() const { return cells_; }

  /// Row-major cell index (last coordinate fastest). Requires contains(x).
  std::size_t index_of(const StateVec& x) const;
  StateVec state_at(std::size_t index) const;

  /// Box grown by margin cells per axis (negative margins shrink).
  ScopeBox dilated(int margin) const;

  /// Intersection with outer; requires the boxes to overlap.
  ScopeBox clipped_to(const ScopeBox& outer) const;

  ScopeBox projected(const std::vector<int>& dims) const;

  bool operator==(const ScopeBox& other) const = default;

 private:
  StateVec lo_, hi_;
  std::size_t cells_ = 0;
  std::vector<std::size_t> stride_;
};

/// A finite set of integer offset vectors of one dimension.
/// Player ranges must contain the zero vector; granularity sets are
/// centered boxes [-b,+b] per component.
class MoveSet {
 public:
  MoveSet() = default;
  explicit MoveSet(std::vector<StateVec> moves);

  /// The centered box with per-component bounds b: [-b_j, +b_j].
  static MoveSet box(const std::vector<std::int32_t>& bounds);
  /// The uniform centered box [-b, +b]^dim.
  static MoveSet box_uniform(int dim, std::int32_t b);

  int dim() const;
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  bool contains(const StateVec& m) const;
  bool contains_zero() const;
  bool is_box() const { return box_bounds_.has_value(); }
  const std::vector<std::int32_t>& box_bounds() const;

  const StateVec& operator[](std::size_t i) const { return moves_[i]; }
  auto begin() const { return moves_.begin(); }
  auto end() const { return moves_.end(); }

  bool operator==(const MoveSet& other) const { return moves_ == other.moves_; }

 private:
  std::vector<StateVec> moves_;  // sorted, unique
  std::optional<std::vector<std::int32_t>> box_bounds_;
};

/// An extensional set of lattice cells, optionally tied to an ambient box.
class Region {
 public:
  Region() = default;
  explicit Region(std::optional<ScopeBox> ambient) : ambient_(std::move(ambient)) {}
  Region(std::initializer_list<StateVec> cells);

  static Region from_cells(std::vector<StateVec> cells,
                           std::optional<ScopeBox> ambient = std::nullopt);
  static Region from_box(const ScopeBox& box,
                         std::optional<ScopeBox> ambient = std::nullopt);

  void insert(const StateVec& cell);
  void insert_box(const ScopeBox& box);

  bool contains(const StateVec& cell) const { return cells_.count(cell) > 0; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  int dim() const;

  const std::optional<ScopeBox>& ambient() const { return ambient_; }

  /// Set of projections of all cells onto dims.
  Region projected(const std::vector<int>& dims) const;

  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  bool operator==(const Region& other) const { return cells_ == other.cells_; }

 private:
  std::set<StateVec> cells_;
  std::optional<ScopeBox> ambient_;
};

/// True iff every consecutive difference lies in delta.
/// A single-point trajectory is trivially a delta-trajectory.
bool is_delta_trajectory(const Trajectory& traj, const MoveSet& delta);

/// Continuity with respect to the minimal-change box [-1,+1]^m.
bool is_continuous(const Trajectory& traj);

/// Shortest continuous trajectory containing traj as a subsequence.
/// Between consecutive points every still-differing component moves by +-1
/// per inserted step, so each gap is bridged in Chebyshev-distance steps.
/// Idempotent on continuous inputs.
Trajectory continuous_completion(const Trajectory& traj);

/// Minkowski sum {a + b | a in region, b in delta}, clipped to the
/// region's ambient box when one is declared.
Region minkowski_dilate(const Region& region, const MoveSet& delta);

}  // namespace raddp
