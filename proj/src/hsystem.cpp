#include "ivpkit/hsystem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ivpkit/errors.hpp"

namespace ivpkit {

HSystem::HSystem(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("HSystem dimension must be positive");
}

HSystem& HSystem::add(std::vector<Rat> coeffs, Rat bound, Relation rel) {
  if (static_cast<int>(coeffs.size()) != dim_) throw std::invalid_argument("constraint length does not match dimension");
  rows_.push_back({std::move(coeffs), std::move(bound), rel});
  return *this;
}

HSystem& HSystem::add_ge(std::vector<Rat> coeffs, const Rat& bound) {
  for (auto& c : coeffs) c = -c;
  return add_le(std::move(coeffs), -bound);
}

HSystem& HSystem::bound_var(int var, const Rat& lo, const Rat& hi) {
  std::vector<Rat> e(dim_, Rat(0));
  e[var] = 1;
  add_le(e, hi);
  return add_ge(std::move(e), lo);
}

HSystem& HSystem::fix_var(int var, const Rat& value) {
  std::vector<Rat> e(dim_, Rat(0));
  e[var] = 1;
  return add_eq(std::move(e), value);
}

HSystem& HSystem::point_on_segment(int u, int v, const Seg& s) {
  const Pt& p = s.p();
  const Pt& q = s.q();
  if (s.degenerate()) {
    fix_var(u, p.x);
    return fix_var(v, p.y);
  }
  // (q - p) x ((u, v) - p) = 0
  std::vector<Rat> line(dim_, Rat(0));
  const Rat dx = q.x - p.x, dy = q.y - p.y;
  line[u] = -dy;
  line[v] = dx;
  add_eq(std::move(line), Rat(dx * p.y - dy * p.x));
  if (s.vertical()) return bound_var(v, p.y, q.y);
  return bound_var(u, p.x, q.x);
}

HSystem& HSystem::append(const HSystem& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch in append");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  return *this;
}

bool HSystem::satisfied_by(std::span<const Rat> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (const auto& r : rows_) {
    Rat lhs = 0;
    for (int j = 0; j < dim_; ++j) lhs += r.coeffs[j] * x[j];
    if (r.rel == Relation::Equal ? lhs != r.bound : lhs > r.bound) return false;
  }
  return true;
}

namespace {

// Working set of constraints with a fixed column count. Eliminated variables keep
// their column (all zero) so indices stay stable across stages.
struct Rows {
  std::vector<Constraint> rows;
  bool infeasible = false;
};

// Scales each row so its first nonzero coefficient is +-1 (equalities: +1),
// settles constant rows, and merges rows with identical left-hand sides.
void normalize(Rows& rs) {
  std::map<std::vector<Rat>, Rat> le;
  std::map<std::vector<Rat>, Rat> eq;
  for (auto& r : rs.rows) {
    auto it = std::find_if(r.coeffs.begin(), r.coeffs.end(), [](const Rat& c) { return c != 0; });
    if (it == r.coeffs.end()) {
      bool ok = r.rel == Relation::Equal ? r.bound == 0 : r.bound >= 0;
      if (!ok) rs.infeasible = true;
      continue;
    }
    Rat scale = r.rel == Relation::Equal ? Rat(*it) : Rat(abs(*it));
    if (scale != 1) {
      for (auto& c : r.coeffs) c /= scale;
      r.bound /= scale;
    }
    if (r.rel == Relation::Equal) {
      auto [pos, inserted] = eq.try_emplace(r.coeffs, r.bound);
      if (!inserted && pos->second != r.bound) rs.infeasible = true;
    } else {
      auto [pos, inserted] = le.try_emplace(r.coeffs, r.bound);
      if (!inserted && r.bound < pos->second) pos->second = r.bound;
    }
  }
  rs.rows.clear();
  if (rs.infeasible) return;
  for (auto& [c, b] : eq) rs.rows.push_back({c, b, Relation::Equal});
  for (auto& [c, b] : le) rs.rows.push_back({c, b, Relation::LessEqual});
}

// a - factor * b, coefficientwise (bound included).
Constraint combine(const Constraint& a, const Rat& factor, const Constraint& b, Relation rel) {
  Constraint out{a.coeffs, a.bound, rel};
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] -= factor * b.coeffs[j];
  out.bound -= factor * b.bound;
  return out;
}

void eliminate_in_place(Rows& rs, int var) {
  if (rs.infeasible) return;
  auto pivot = std::find_if(rs.rows.begin(), rs.rows.end(),
                            [&](const Constraint& r) { return r.rel == Relation::Equal && r.coeffs[var] != 0; });
  std::vector<Constraint> next;
  if (pivot != rs.rows.end()) {
    const Constraint eq = *pivot;
    for (auto it = rs.rows.begin(); it != rs.rows.end(); ++it) {
      if (it == pivot) continue;
      if (it->coeffs[var] == 0) {
        next.push_back(*it);
        continue;
      }
      Rat factor = it->coeffs[var] / eq.coeffs[var];
      next.push_back(combine(*it, factor, eq, it->rel));
      next.back().coeffs[var] = 0;
    }
  } else {
    std::vector<const Constraint*> pos, neg;
    for (const auto& r : rs.rows) {
      int s = sgn(r.coeffs[var]);
      if (s == 0)
        next.push_back(r);
      else
        (s > 0 ? pos : neg).push_back(&r);
    }
    for (const auto* p : pos) {
      for (const auto* n : neg) {
        // p / p_k + n / |n_k|
        Constraint c{p->coeffs, p->bound, Relation::LessEqual};
        const Rat& pk = p->coeffs[var];
        Rat nk = -n->coeffs[var];
        for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = c.coeffs[j] / pk + n->coeffs[j] / nk;
        c.bound = p->bound / pk + n->bound / nk;
        c.coeffs[var] = 0;
        next.push_back(std::move(c));
      }
    }
  }
  rs.rows = std::move(next);
  normalize(rs);
}

// Picks the next variable: one with an equality if possible, otherwise the one
// whose Fourier-Motzkin step produces the fewest rows. -1 when none remain.
int choose_variable(const Rows& rs, int dim, const std::vector<bool>& done) {
  int best = -1;
  long best_cost = 0;
  for (int v = 0; v < dim; ++v) {
    if (done[v]) continue;
    long p = 0, n = 0;
    bool in_eq = false, present = false;
    for (const auto& r : rs.rows) {
      int s = sgn(r.coeffs[v]);
      if (s == 0) continue;
      present = true;
      if (r.rel == Relation::Equal) in_eq = true;
      (s > 0 ? p : n) += 1;
    }
    if (!present) continue;
    long cost = in_eq ? -1 : p * n - p - n;
    if (best < 0 || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

void check_dim(const HSystem& sys, const EliminationLimits& limits) {
  if (sys.dim() > limits.max_dim)
    throw DimensionError("system dimension " + std::to_string(sys.dim()) + " exceeds limit " + std::to_string(limits.max_dim));
}

Rows to_rows(const HSystem& sys) {
  Rows rs{sys.constraints(), false};
  normalize(rs);
  return rs;
}

struct Stage {
  std::vector<Constraint> rows;
  int var;
};

// Eliminates every variable except keep (-1: all). Returns the stages for
// back-substitution and the final row set.
Rows run_elimination(const HSystem& sys, int keep, std::vector<Stage>* stages) {
  Rows rs = to_rows(sys);
  std::vector<bool> done(sys.dim(), false);
  if (keep >= 0) done[keep] = true;
  while (!rs.infeasible) {
    int v = choose_variable(rs, sys.dim(), done);
    if (v < 0) break;
    if (stages) stages->push_back({rs.rows, v});
    eliminate_in_place(rs, v);
    done[v] = true;
  }
  return rs;
}

// Bounds on x[var] from rows in which every other variable is already fixed.
bool bounds_for(const std::vector<Constraint>& rows, int var, const std::vector<std::optional<Rat>>& vals,
                std::optional<Rat>& lo, std::optional<Rat>& hi, std::optional<Rat>& fixed) {
  for (const auto& r : rows) {
    Rat residual = r.bound;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
      if (static_cast<int>(j) == var || r.coeffs[j] == 0) continue;
      residual -= r.coeffs[j] * *vals[j];
    }
    const Rat& c = r.coeffs[var];
    if (c == 0) {
      bool ok = r.rel == Relation::Equal ? residual == 0 : residual >= 0;
      if (!ok) return false;
      continue;
    }
    Rat v = residual / c;
    if (r.rel == Relation::Equal) {
      if (fixed && *fixed != v) return false;
      fixed = v;
    } else if (c > 0) {
      if (!hi || v < *hi) hi = v;
    } else {
      if (!lo || v > *lo) lo = v;
    }
  }
  if (lo && hi && *lo > *hi) return false;
  if (fixed && ((lo && *fixed < *lo) || (hi && *fixed > *hi))) return false;
  return true;
}

}  // namespace

HSystem eliminate(const HSystem& sys, int var) {
  if (var < 0 || var >= sys.dim()) throw std::out_of_range("eliminate: variable index out of range");
  if (sys.dim() == 1) throw std::invalid_argument("eliminate: cannot project a 1-dimensional system");
  Rows rs = to_rows(sys);
  eliminate_in_place(rs, var);
  HSystem out(sys.dim() - 1);
  if (rs.infeasible) {
    std::vector<Rat> zero(sys.dim() - 1, Rat(0));
    out.add_le(std::move(zero), Rat(-1));
    return out;
  }
  for (auto& r : rs.rows) {
    std::vector<Rat> c;
    c.reserve(sys.dim() - 1);
    for (int j = 0; j < sys.dim(); ++j)
      if (j != var) c.push_back(r.coeffs[j]);
    out.add(std::move(c), r.bound, r.rel);
  }
  return out;
}

bool feasible(const HSystem& sys, const EliminationLimits& limits) {
  check_dim(sys, limits);
  Rows rs = run_elimination(sys, -1, nullptr);
  return !rs.infeasible;
}

std::optional<std::vector<Rat>> find_point(const HSystem& sys, const EliminationLimits& limits) {
  check_dim(sys, limits);
  std::vector<Stage> stages;
  Rows rs = run_elimination(sys, -1, &stages);
  if (rs.infeasible) return std::nullopt;
  std::vector<std::optional<Rat>> vals(sys.dim());
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    // Variables that dropped out after this stage are unconstrained by later
    // stages; any value extends, so fix them at zero.
    for (const auto& r : it->rows)
      for (int j = 0; j < sys.dim(); ++j)
        if (j != it->var && r.coeffs[j] != 0 && !vals[j]) vals[j] = Rat(0);
    std::optional<Rat> lo, hi, fixed;
    if (!bounds_for(it->rows, it->var, vals, lo, hi, fixed))
      throw std::logic_error("find_point: back-substitution left an empty range");
    if (fixed)
      vals[it->var] = *fixed;
    else if (lo && hi)
      vals[it->var] = midpoint(*lo, *hi);
    else if (lo)
      vals[it->var] = *lo;
    else if (hi)
      vals[it->var] = *hi;
    else
      vals[it->var] = Rat(0);
  }
  std::vector<Rat> out(sys.dim());
  for (int j = 0; j < sys.dim(); ++j) out[j] = vals[j] ? *vals[j] : Rat(0);
  return out;
}

HSystem tighten(const HSystem& sys, const Rat& slack) {
  HSystem out(sys.dim());
  for (const auto& r : sys.constraints())
    out.add(r.coeffs, r.rel == Relation::LessEqual ? Rat(r.bound - slack) : r.bound, r.rel);
  return out;
}

std::optional<Range> variable_range(const HSystem& sys, int var, const EliminationLimits& limits) {
  check_dim(sys, limits);
  if (var < 0 || var >= sys.dim()) throw std::out_of_range("variable_range: variable index out of range");
  Rows rs = run_elimination(sys, var, nullptr);
  if (rs.infeasible) return std::nullopt;
  std::vector<std::optional<Rat>> vals(sys.dim(), Rat(0));
  std::optional<Rat> lo, hi, fixed;
  if (!bounds_for(rs.rows, var, vals, lo, hi, fixed)) return std::nullopt;
  if (fixed) return Range{fixed, fixed};
  return Range{lo, hi};
}

}  // namespace ivpkit
