#include "ivpkit/strips.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ivpkit/errors.hpp"
#include "union_find.hpp"

namespace ivpkit {

Arrangement::Arrangement(const PLGraph& g) : graph_(canonicalize(g)) {
  const auto& s = graph_.segs;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      auto r = seg_intersect(s[i], s[j]);
      if (auto* pt = std::get_if<Pt>(&r)) contacts_.push_back({i, j, *pt});
    }
  critical_xs_ = ivpkit::critical_xs(graph_);
  for (std::size_t i = 0; i < critical_xs_.size(); ++i) {
    probe_xs_.push_back(critical_xs_[i]);
    if (i + 1 < critical_xs_.size()) probe_xs_.push_back(midpoint(critical_xs_[i], critical_xs_[i + 1]));
  }
}

using detail::UnionFind;

StripAnalysis strip_components(const Arrangement& arr, const Rat& a, const Rat& b) {
  const auto& segs = arr.segs();
  std::vector<std::optional<Seg>> clipped(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) clipped[i] = clip_to_strip(segs[i], a, b);
  UnionFind uf(segs.size());
  for (const auto& c : arr.contacts())
    if (a <= c.at.x && c.at.x <= b) uf.unite(c.i, c.j);

  StripAnalysis out{a, b, {}};
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!clipped[i]) continue;
    auto [it, fresh] = slot.try_emplace(uf.find(i), out.components.size());
    if (fresh) {
      StripComponent c;
      c.x_extent = {clipped[i]->p().x, clipped[i]->q().x};
      out.components.push_back(std::move(c));
    }
    auto& comp = out.components[it->second];
    const Seg& piece = *clipped[i];
    comp.seg_ids.push_back(i);
    comp.pieces.push_back(piece);
    if (piece.p().x == a) comp.touches_left = true;
    if (piece.q().x == b) comp.touches_right = true;
    if (piece.p().x < comp.x_extent.lo) comp.x_extent.lo = piece.p().x;
    if (piece.q().x > comp.x_extent.hi) comp.x_extent.hi = piece.q().x;
  }
  return out;
}

StripAnalysis strip_components(const PLGraph& g, const Rat& a, const Rat& b) {
  return strip_components(Arrangement(g), a, b);
}

namespace {

void require_total(const PLGraph& g, const char* who) {
  if (!validate(g).domain_total) throw PreconditionError(std::string(who) + ": graph is not domain-total");
}

}  // namespace

WivpReport has_wivp(const PLGraph& g) {
  require_total(g, "has_wivp");
  Arrangement arr(g);
  WivpReport report;
  report.graph_connected = is_graph_connected(arr.graph()).connected;

  struct Failure {
    Rat width, a, b;
    StripComponent comp;
  };
  std::optional<Failure> best;
  const auto& xs = arr.probe_xs();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      Rat width = xs[j] - xs[i];
      if (best && width >= best->width) {
        ++report.strips_checked;
        continue;  // cannot improve the witness; the verdict is already false
      }
      StripAnalysis sa = strip_components(arr, xs[i], xs[j]);
      ++report.strips_checked;
      for (auto& c : sa.components) {
        if (c.touches_left && c.touches_right) continue;
        best = Failure{width, xs[i], xs[j], std::move(c)};
        break;
      }
    }
  }
  if (!best) return report;

  report.holds = false;
  Rat a = best->a, b = best->b;
  const auto& trapped = best->comp;
  Wall missed = trapped.touches_left ? Wall::Right : Wall::Left;
  if (!trapped.touches_left) a = midpoint(a, trapped.x_extent.lo);
  if (!trapped.touches_right) b = midpoint(trapped.x_extent.hi, b);
  StripAnalysis tight = strip_components(arr, a, b);
  for (std::size_t k = 0; k < tight.components.size(); ++k) {
    const auto& ids = tight.components[k].seg_ids;
    if (std::find(ids.begin(), ids.end(), trapped.seg_ids.front()) == ids.end()) continue;
    report.witness = WivpWitness{a, b, k, missed, tight.components[k].pieces};
    break;
  }
  return report;
}

IvpReport has_ivp(const PLGraph& g) {
  require_total(g, "has_ivp");
  Arrangement arr(g);
  IvpReport report;
  const auto& xs = arr.probe_xs();
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      ++report.strips_checked;
      if (strip_components(arr, xs[i], xs[j]).components.size() != 1) {
        report.holds = false;
        IvpWitness w;
        w.kind = IvpWitness::Kind::DisconnectedStrip;
        w.a = xs[i];
        w.b = xs[j];
        report.witness = w;
        return report;
      }
    }

  auto fail_point = [&](const Pt& p, Wall side) {
    report.holds = false;
    IvpWitness w;
    w.kind = IvpWitness::Kind::UnapproachablePoint;
    w.point = p;
    w.side = side;
    report.witness = w;
    return report;
  };
  const auto& segs = arr.segs();
  // Vertical runs and isolated points: in canonical form no slanted segment passes
  // through their interior, so an interior point is unapproachable.
  for (const auto& s : segs) {
    if (!s.vertical()) continue;
    Pt p = s.degenerate() ? s.p() : Pt{s.p().x, midpoint(s.p().y, s.q().y)};
    return fail_point(p, p.x < 1 ? Wall::Right : Wall::Left);
  }
  for (const auto& s : segs) {
    for (const Pt* v : {&s.p(), &s.q()}) {
      bool right = false, left = false;
      for (const auto& t : segs) {
        if (t.vertical()) continue;
        if (t.p() == *v) right = true;
        if (t.q() == *v) left = true;
      }
      if (v->x < 1 && !right) return fail_point(*v, Wall::Right);
      if (v->x > 0 && !left) return fail_point(*v, Wall::Left);
    }
  }
  return report;
}

namespace {

mpz_class floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

mpz_class ceil_rat(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// Cells k with [k/N, (k+1)/N] meeting [lo, hi].
std::pair<int, int> cell_range(const Rat& lo, const Rat& hi, int n) {
  long first = std::max<long>(0, ceil_rat(lo * n).get_si() - 1);
  long last = std::min<long>(n - 1, floor_rat(hi * n).get_si());
  return {static_cast<int>(first), static_cast<int>(last)};
}

}  // namespace

std::vector<std::vector<int>> rasterize(const PLGraph& g, int n) {
  std::vector<std::vector<int>> cols(n);
  for (const auto& s : g.segs) {
    auto [c0, c1] = cell_range(s.p().x, s.q().x, n);
    for (int c = c0; c <= c1; ++c) {
      auto piece = clip_to_strip(s, frac(c, n), frac(c + 1, n));
      if (!piece) continue;
      const Rat& ya = piece->p().y;
      const Rat& yb = piece->q().y;
      auto [r0, r1] = cell_range(std::min(ya, yb), std::max(ya, yb), n);
      for (int r = r0; r <= r1; ++r) cols[c].push_back(r);
    }
  }
  for (auto& col : cols) {
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
  }
  return cols;
}

GridOracleReport wivp_grid_oracle(const PLGraph& g, int n) {
  if (n < 8) throw std::invalid_argument("wivp_grid_oracle: resolution must be at least 8");
  auto cols = rasterize(g, n);
  std::vector<std::size_t> offset(n + 1, 0);
  for (int c = 0; c < n; ++c) offset[c + 1] = offset[c] + cols[c].size();

  std::vector<std::size_t> parent(offset[n]);
  std::vector<char> left(offset[n]);
  std::size_t comps = 0, left_roots = 0;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u == v) return;
    if (left[u] && left[v]) --left_roots;
    left[v] = left[v] || left[u];
    parent[u] = v;
    --comps;
  };

  GridOracleReport report;
  report.resolution = n;
  std::vector<std::size_t> roots;
  for (int a = 0; a < n; ++a) {
    comps = left_roots = 0;
    for (int b = a; b < n; ++b) {
      const auto& col = cols[b];
      for (std::size_t k = 0; k < col.size(); ++k) {
        std::size_t id = offset[b] + k;
        parent[id] = id;
        left[id] = b == a;
        ++comps;
        if (b == a) ++left_roots;
      }
      for (std::size_t k = 0; k + 1 < col.size(); ++k)
        if (col[k + 1] == col[k] + 1) unite(offset[b] + k, offset[b] + k + 1);
      if (b == a) continue;
      const auto& prev = cols[b - 1];
      for (std::size_t k = 0; k < col.size(); ++k) {
        auto lo = std::lower_bound(prev.begin(), prev.end(), col[k] - 1);
        for (auto it = lo; it != prev.end() && *it <= col[k] + 1; ++it)
          unite(offset[b] + k, offset[b - 1] + static_cast<std::size_t>(it - prev.begin()));
      }
      roots.clear();
      for (std::size_t k = 0; k < col.size(); ++k) roots.push_back(find(offset[b] + k));
      std::sort(roots.begin(), roots.end());
      std::size_t right_roots = static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
      if (left_roots != comps || right_roots != comps) {
        report.failed = true;
        report.witness = GridOracleWitness{a, b, left_roots != comps ? Wall::Left : Wall::Right};
        return report;
      }
    }
  }
  return report;
}

}  // namespace ivpkit
