#include "ivpkit/mahavier.hpp"

#include <algorithm>
#include <map>

#include "ivpkit/errors.hpp"
#include "ivpkit/parallel.hpp"
#include "union_find.hpp"

namespace ivpkit {

using detail::UnionFind;

namespace {

std::vector<PLGraph> expand(const std::vector<PLGraph>& graphs, int n) {
  if (graphs.empty()) throw PreconditionError("mahavier: no bonding graphs");
  if (n < 1) throw PreconditionError("mahavier: n must be at least 1");
  std::vector<PLGraph> out;
  for (int i = 0; i < n; ++i) out.push_back(graphs[std::min<std::size_t>(i, graphs.size() - 1)]);
  return out;
}

// Segment list with duplicates removed; cells are built from these.
std::vector<Seg> cell_segments(const PLGraph& g) {
  std::vector<Seg> s = g.segs;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

CellComplex build(const std::vector<PLGraph>& graphs, int n, const BuildOptions& opts) {
  CellComplex cc;
  cc.n = n;
  cc.graphs = expand(graphs, n);
  std::vector<std::vector<Seg>> segs;
  for (const auto& g : cc.graphs) segs.push_back(cell_segments(g));

  std::uint64_t total = 1;
  for (const auto& s : segs) {
    if (s.empty()) {
      total = 0;
      break;
    }
    const unsigned __int128 next = static_cast<unsigned __int128>(total) * s.size();
    if (next > opts.budget) throw BudgetError("mahavier: tuple count exceeds budget");
    total = static_cast<std::uint64_t>(next);
  }
  cc.tuples_total = total;
  cc.bonding_surjective = std::all_of(cc.graphs.begin(), cc.graphs.end(),
                                      [](const PLGraph& g) { return is_surjective(g).surjective; });
  if (total == 0) return cc;

  // Level-by-level extension of feasible prefixes keeps the output order
  // lexicographic whatever the thread count.
  HSystem base(n + 1);
  for (int j = 0; j <= n; ++j) base.bound_var(j, 0, 1);
  std::vector<Cell> frontier{{{}, base}};
  for (int i = 1; i <= n; ++i) {
    const auto& level = segs[i - 1];
    std::vector<std::vector<Cell>> grown(frontier.size());
    parallel_for(
        frontier.size(),
        [&](std::size_t k) {
          for (std::size_t s = 0; s < level.size(); ++s) {
            Cell c = frontier[k];
            c.tuple.push_back(s);
            c.system.point_on_segment(i, i - 1, level[s]);
            if (feasible(c.system)) grown[k].push_back(std::move(c));
          }
        },
        opts.threads);
    frontier.clear();
    for (auto& g : grown)
      for (auto& c : g) frontier.push_back(std::move(c));
  }
  cc.cells = std::move(frontier);

  std::vector<std::vector<std::vector<bool>>> touch(n);
  for (int i = 0; i < n; ++i) {
    const auto& s = segs[i];
    touch[i].assign(s.size(), std::vector<bool>(s.size()));
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = 0; b < s.size(); ++b) touch[i][a][b] = !empty(seg_intersect(s[a], s[b]));
  }
  const auto& cells = cc.cells;
  std::vector<std::vector<std::size_t>> nbrs(cells.size());
  parallel_for(
      cells.size(),
      [&](std::size_t a) {
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
          bool may = true;
          for (int i = 0; i < n && may; ++i) may = touch[i][cells[a].tuple[i]][cells[b].tuple[i]];
          if (!may) continue;
          HSystem both = cells[a].system;
          both.append(cells[b].system);
          if (feasible(both)) nbrs[a].push_back(b);
        }
      },
      opts.threads);
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b : nbrs[a]) cc.edges.emplace_back(a, b);
  return cc;
}

std::vector<Rat> cell_witness(const Cell& c) {
  for (const Rat& slack : {Rat(1, 64), Rat(1, 256), Rat(1, 1024)})
    if (auto p = find_point(tighten(c.system, slack))) return *p;
  auto p = find_point(c.system);
  if (!p) throw PreconditionError("cell_witness: empty cell");
  return *p;
}

ConnectivityVerdict is_connected(const CellComplex& cc) {
  ConnectivityVerdict v;
  v.bonding_surjective = cc.bonding_surjective;
  UnionFind uf(cc.cells.size());
  for (const auto& [a, b] : cc.edges) uf.unite(a, b);
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> comps;  // root -> (size, first cell)
  for (std::size_t c = 0; c < cc.cells.size(); ++c) {
    auto [it, fresh] = comps.try_emplace(uf.find(c), 0, c);
    ++it->second.first;
  }
  v.components = comps.size();
  v.connected = comps.size() <= 1;
  if (v.connected) return v;

  std::size_t small_root = 0;
  std::pair<std::size_t, std::size_t> best{SIZE_MAX, SIZE_MAX};
  for (const auto& [root, info] : comps)
    if (info < best) {
      best = info;
      small_root = root;
    }
  v.part.resize(cc.cells.size());
  std::optional<std::size_t> first[2];
  for (std::size_t c = 0; c < cc.cells.size(); ++c) {
    v.part[c] = uf.find(c) == small_root ? 1 : 0;
    if (!first[v.part[c]]) first[v.part[c]] = c;
  }
  for (int side = 0; side < 2; ++side) v.witness_points.push_back(cell_witness(cc.cells[*first[side]]));
  return v;
}

std::vector<std::vector<Rat>> pivot_candidates(const CellComplex& cc, const std::vector<Interval>& boxes) {
  if (boxes.size() != static_cast<std::size_t>(cc.n + 1))
    throw PreconditionError("pivot_candidates: need one box per coordinate");
  std::vector<std::vector<Rat>> out;
  for (const Cell& c : cc.cells) {
    HSystem sys = c.system;
    for (int j = 0; j <= cc.n; ++j) sys.bound_var(j, boxes[j].lo, boxes[j].hi);
    if (auto p = find_point(sys)) out.push_back(std::move(*p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReverseCheck reverse_transpose_check(const std::vector<PLGraph>& graphs, int n, const BuildOptions& opts) {
  auto forward = expand(graphs, n);
  std::vector<PLGraph> reverse;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
    PLGraph t = transpose(*it);
    if (!validate(t).domain_total)
      throw PreconditionError("reverse_transpose_check: transposed graph is not domain-total");
    reverse.push_back(std::move(t));
  }
  ReverseCheck r;
  r.verdict_forward = is_connected(build(forward, n, opts)).connected;
  r.verdict_reverse = is_connected(build(reverse, n, opts)).connected;
  return r;
}

}  // namespace ivpkit
