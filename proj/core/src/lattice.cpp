#include "raddp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace raddp {

namespace {

void require_same_dim(const StateVec& a, const StateVec& b, const char* what) {
  if (a.size() != b.size()) {
    throw InputError(std::string(what) + ": dimension mismatch (" +
                     std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

StateVec add(const StateVec& a, const StateVec& b) {
  require_same_dim(a, b, "add");
  StateVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

StateVec sub(const StateVec& a, const StateVec& b) {
  require_same_dim(a, b, "sub");
  StateVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::int32_t chebyshev(const StateVec& a, const StateVec& b) {
  require_same_dim(a, b, "chebyshev");
  std::int32_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::int32_t norm_inf(const StateVec& v) {
  std::int32_t m = 0;
  for (auto c : v) m = std::max(m, std::abs(c));
  return m;
}

std::int64_t dot(const StateVec& a, const StateVec& b) {
  require_same_dim(a, b, "dot");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::int64_t(a[i]) * b[i];
  return s;
}

std::int64_t norm2_sq(const StateVec& v) { return dot(v, v); }

std::string to_string(const StateVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

StateVec project(const StateVec& x, const std::vector<int>& dims) {
  StateVec r;
  r.reserve(dims.size());
  for (int d : dims) {
    if (d < 0 || d >= static_cast<int>(x.size()))
      throw InputError("project: dimension index out of range");
    r.push_back(x[d]);
  }
  return r;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InputError("isqrt: negative argument");
  if (n < 2) return n;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

ScopeBox::ScopeBox(StateVec lo, StateVec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_dim(lo_, hi_, "ScopeBox");
  if (lo_.empty()) throw InputError("ScopeBox: zero-dimensional box");
  std::size_t cells = 1;
  constexpr std::size_t kMax = std::numeric_limits<std::int32_t>::max();
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (lo_[i] > hi_[i]) throw InputError("ScopeBox: lo > hi in component " + std::to_string(i));
    std::size_t extent = std::size_t(hi_[i] - lo_[i]) + 1;
    if (cells > kMax / extent) throw InputError("ScopeBox: cell count overflows index type");
    cells *= extent;
  }
  cells_ = cells;
  stride_.assign(lo_.size(), 1);
  for (int i = static_cast<int>(lo_.size()) - 2; i >= 0; --i)
    stride_[i] = stride_[i + 1] * (std::size_t(hi_[i + 1] - lo_[i + 1]) + 1);
}

bool ScopeBox::contains(const StateVec& x) const {
  if (x.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  return true;
}

bool ScopeBox::contains_box(const ScopeBox& inner) const {
  return contains(inner.lo()) && contains(inner.hi());
}

std::size_t ScopeBox::index_of(const StateVec& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx += std::size_t(x[i] - lo_[i]) * stride_[i];
  return idx;
}

StateVec ScopeBox::state_at(std::size_t index) const {
  StateVec x(lo_.size());
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    x[i] = lo_[i] + static_cast<std::int32_t>(index / stride_[i]);
    index %= stride_[i];
  }
  return x;
}

ScopeBox ScopeBox::dilated(int margin) const {
  StateVec lo = lo_, hi = hi_;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= margin;
    hi[i] += margin;
  }
  return ScopeBox(std::move(lo), std::move(hi));
}

ScopeBox ScopeBox::clipped_to(const ScopeBox& outer) const {
  require_same_dim(lo_, outer.lo_, "clipped_to");
  StateVec lo = lo_, hi = hi_;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::max(lo[i], outer.lo_[i]);
    hi[i] = std::min(hi[i], outer.hi_[i]);
    if (lo[i] > hi[i]) throw InputError("clipped_to: boxes do not overlap");
  }
  return ScopeBox(std::move(lo), std::move(hi));
}

ScopeBox ScopeBox::projected(const std::vector<int>& dims) const {
  return ScopeBox(project(lo_, dims), project(hi_, dims));
}

MoveSet::MoveSet(std::vector<StateVec> moves) : moves_(std::move(moves)) {
  if (moves_.empty()) throw InputError("MoveSet: empty move set");
  for (const auto& m : moves_) require_same_dim(m, moves_.front(), "MoveSet");
  std::sort(moves_.begin(), moves_.end());
  moves_.erase(std::unique(moves_.begin(), moves_.end()), moves_.end());
}

MoveSet MoveSet::box(const std::vector<std::int32_t>& bounds) {
  if (bounds.empty()) throw InputError("MoveSet::box: zero-dimensional bounds");
  for (auto b : bounds)
    if (b < 0) throw InputError("MoveSet::box: negative bound");
  std::vector<StateVec> moves;
  StateVec cur(bounds.size());
  // odometer over [-b_j, +b_j]
  for (std::size_t i = 0; i < bounds.size(); ++i) cur[i] = -bounds[i];
  while (true) {
    moves.push_back(cur);
    std::size_t i = bounds.size();
    while (i > 0) {
      --i;
      if (cur[i] < bounds[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < bounds.size(); ++j) cur[j] = -bounds[j];
        break;
      }
      if (i == 0) {
        MoveSet ms(std::move(moves));
        ms.box_bounds_ = bounds;
        return ms;
      }
    }
  }
}

MoveSet MoveSet::box_uniform(int dim, std::int32_t b) {
  return box(std::vector<std::int32_t>(dim, b));
}

int MoveSet::dim() const {
  if (moves_.empty()) throw InputError("MoveSet::dim: empty move set");
  return static_cast<int>(moves_.front().size());
}

bool MoveSet::contains(const StateVec& m) const {
  if (box_bounds_) {
    if (m.size() != box_bounds_->size()) return false;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (std::abs(m[i]) > (*box_bounds_)[i]) return false;
    return true;
  }
  return std::binary_search(moves_.begin(), moves_.end(), m);
}

bool MoveSet::contains_zero() const {
  return !moves_.empty() && contains(StateVec(moves_.front().size(), 0));
}

const std::vector<std::int32_t>& MoveSet::box_bounds() const {
  if (!box_bounds_) throw InputError("MoveSet: not a box-shaped set");
  return *box_bounds_;
}

Region::Region(std::initializer_list<StateVec> cells) {
  for (const auto& c : cells) insert(c);
}

Region Region::from_cells(std::vector<StateVec> cells, std::optional<ScopeBox> ambient) {
  Region r(std::move(ambient));
  for (auto& c : cells) r.insert(c);
  return r;
}

Region Region::from_box(const ScopeBox& box, std::optional<ScopeBox> ambient) {
  Region r(std::move(ambient));
  r.insert_box(box);
  return r;
}

void Region::insert(const StateVec& cell) {
  if (!cells_.empty() && cell.size() != cells_.begin()->size())
    throw InputError("Region::insert: dimension mismatch");
  if (ambient_ && !ambient_->contains(cell))
    throw InputError("Region::insert: cell " + to_string(cell) + " outside ambient box");
  cells_.insert(cell);
}

void Region::insert_box(const ScopeBox& box) {
  for (std::size_t i = 0; i < box.cell_count(); ++i) insert(box.state_at(i));
}

int Region::dim() const {
  if (cells_.empty()) {
    if (ambient_) return ambient_->dim();
    throw InputError("Region::dim: empty region without ambient box");
  }
  return static_cast<int>(cells_.begin()->size());
}

Region Region::projected(const std::vector<int>& dims) const {
  Region r(ambient_ ? std::optional<ScopeBox>(ambient_->projected(dims)) : std::nullopt);
  for (const auto& c : cells_) r.insert(project(c, dims));
  return r;
}

bool is_delta_trajectory(const Trajectory& traj, const MoveSet& delta) {
  if (traj.empty()) throw InputError("is_delta_trajectory: empty trajectory");
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    if (traj[k].size() != std::size_t(delta.dim()))
      throw InputError("is_delta_trajectory: trajectory/delta dimension mismatch");
    if (!delta.contains(sub(traj[k + 1], traj[k]))) return false;
  }
  if (traj.size() == 1 && traj[0].size() != std::size_t(delta.dim()))
    throw InputError("is_delta_trajectory: trajectory/delta dimension mismatch");
  return true;
}

bool is_continuous(const Trajectory& traj) {
  if (traj.empty()) throw InputError("is_continuous: empty trajectory");
  for (std::size_t k = 0; k + 1 < traj.size(); ++k)
    if (chebyshev(traj[k + 1], traj[k]) > 1) return false;
  return true;
}

Trajectory continuous_completion(const Trajectory& traj) {
  if (traj.empty()) throw InputError("continuous_completion: empty trajectory");
  Trajectory out;
  out.push_back(traj.front());
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    StateVec cur = traj[k];
    const StateVec& target = traj[k + 1];
    while (cur != target) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] < target[i]) ++cur[i];
        else if (cur[i] > target[i]) --cur[i];
      }
      out.push_back(cur);
    }
  }
  return out;
}

Region minkowski_dilate(const Region& region, const MoveSet& delta) {
  Region out(region.ambient());
  for (const auto& cell : region) {
    for (const auto& off : delta) {
      StateVec sum = add(cell, off);
      if (region.ambient() && !region.ambient()->contains(sum)) continue;
      out.insert(sum);
    }
  }
  return out;
}

}  // namespace raddp
