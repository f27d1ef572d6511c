#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ivpkit/geometry.hpp"
#include "ivpkit/rational.hpp"

namespace ivpkit {

enum class Relation { LessEqual, Equal };

/// coeffs · x (<= | =) bound
struct Constraint {
  std::vector<Rat> coeffs;
  Rat bound;
  Relation rel = Relation::LessEqual;
};

/// Conjunction of linear constraints over Rat^dim.
class HSystem {
 public:
  explicit HSystem(int dim);

  int dim() const { return dim_; }
  const std::vector<Constraint>& constraints() const { return rows_; }

  HSystem& add(std::vector<Rat> coeffs, Rat bound, Relation rel);
  HSystem& add_le(std::vector<Rat> coeffs, Rat bound) { return add(std::move(coeffs), std::move(bound), Relation::LessEqual); }
  HSystem& add_ge(std::vector<Rat> coeffs, const Rat& bound);
  HSystem& add_eq(std::vector<Rat> coeffs, Rat bound) { return add(std::move(coeffs), std::move(bound), Relation::Equal); }

  /// lo <= x[var] <= hi
  HSystem& bound_var(int var, const Rat& lo, const Rat& hi);
  /// x[var] = value
  HSystem& fix_var(int var, const Rat& value);
  /// (x[u], x[v]) lies on the closed segment s.
  HSystem& point_on_segment(int u, int v, const Seg& s);
  /// Appends every constraint of other (same dim required).
  HSystem& append(const HSystem& other);

  bool satisfied_by(std::span<const Rat> x) const;

 private:
  int dim_;
  std::vector<Constraint> rows_;
};

struct EliminationLimits {
  int max_dim = 16;
};

/// Exact projection removing variable var; the result has dim() - 1 and the
/// remaining variables keep their relative order.
HSystem eliminate(const HSystem& sys, int var);

/// True iff the system has a rational solution (Fourier-Motzkin, equalities
/// substituted first). Throws DimensionError if dim exceeds the limit.
bool feasible(const HSystem& sys, const EliminationLimits& limits = {});

/// A rational solution, chosen by back-substitution taking interval midpoints
/// where the projection leaves freedom; nullopt when infeasible.
std::optional<std::vector<Rat>> find_point(const HSystem& sys, const EliminationLimits& limits = {});

/// Every <= constraint shifted inward by slack.
HSystem tighten(const HSystem& sys, const Rat& slack);

struct Range {
  std::optional<Rat> lo;  // nullopt = unbounded
  std::optional<Rat> hi;
};

/// Extent of x[var] over the solution set; nullopt when infeasible.
std::optional<Range> variable_range(const HSystem& sys, int var, const EliminationLimits& limits = {});

}  // namespace ivpkit
