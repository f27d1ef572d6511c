#include "ivpkit/decompose.hpp"

#include <algorithm>

#include "ivpkit/errors.hpp"
#include "ivpkit/parallel.hpp"
#include "union_find.hpp"

namespace ivpkit {

using detail::UnionFind;

namespace {

bool pieces_meet(const std::vector<Seg>& a, const std::vector<Seg>& b) {
  for (const Seg& s : a)
    for (const Seg& t : b)
      if (!empty(seg_intersect(s, t))) return true;
  return false;
}

}  // namespace

ChainDecomposition dyadic_decompose(const PLGraph& g, int depth, const DecomposeOptions& opts) {
  if (depth < 1 || depth > 20) throw PreconditionError("dyadic_decompose: depth must be in [1, 20]");
  if (!is_graph_connected(g).connected) throw PreconditionError("dyadic_decompose: graph is not connected");
  if (!has_wivp(g).holds) throw PreconditionError("dyadic_decompose: graph lacks the weak intermediate value property");

  const Arrangement arr(g);
  const std::size_t count = std::size_t{1} << depth;
  ChainDecomposition d;
  d.depth = depth;
  d.strips.resize(count);
  parallel_for(
      count, [&](std::size_t j) { d.strips[j] = strip_components(arr, frac(j, count), frac(j + 1, count)); },
      opts.threads);

  // links[j][c]: components of strip j+1 meeting component c of strip j.
  std::vector<std::vector<std::vector<std::size_t>>> links(count - 1);
  parallel_for(
      count - 1,
      [&](std::size_t j) {
        const auto& left = d.strips[j].components;
        const auto& right = d.strips[j + 1].components;
        links[j].resize(left.size());
        for (std::size_t c = 0; c < left.size(); ++c)
          for (std::size_t e = 0; e < right.size(); ++e)
            if (pieces_meet(left[c].pieces, right[e].pieces)) links[j][c].push_back(e);
      },
      opts.threads);

  // Number of full chains, saturating just above the bound.
  const std::size_t cap = opts.max_chains + 1;
  std::vector<std::size_t> ways(d.strips.back().components.size(), 1);
  for (std::size_t j = count - 1; j-- > 0;) {
    std::vector<std::size_t> prev(d.strips[j].components.size(), 0);
    for (std::size_t c = 0; c < prev.size(); ++c)
      for (std::size_t e : links[j][c]) prev[c] = std::min(cap, prev[c] + ways[e]);
    ways = std::move(prev);
  }
  std::size_t total = 0;
  for (std::size_t w : ways) total = std::min(cap, total + w);

  if (total <= opts.max_chains) {
    std::vector<std::size_t> path;
    auto walk = [&](auto&& self, std::size_t j, std::size_t c) -> void {
      path.push_back(c);
      if (j + 1 == count)
        d.chains.push_back(path);
      else
        for (std::size_t e : links[j][c]) self(self, j + 1, e);
      path.pop_back();
    };
    for (std::size_t c = 0; c < d.strips[0].components.size(); ++c) walk(walk, 0, c);
  } else {
    if (opts.strict) throw BudgetError("dyadic_decompose: chain count exceeds bound");
    d.overflow = true;
    std::vector<std::vector<bool>> covered(count);
    for (std::size_t j = 0; j < count; ++j) covered[j].assign(d.strips[j].components.size(), false);
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t c = 0; c < covered[j].size(); ++c) {
        if (covered[j][c]) continue;
        std::vector<std::size_t> chain(count);
        chain[j] = c;
        for (std::size_t k = j; k + 1 < count; ++k) {
          const auto& next = links[k][chain[k]];
          if (next.empty()) throw PreconditionError("dyadic_decompose: component misses its right neighbour");
          chain[k + 1] = next.front();
        }
        for (std::size_t k = j; k-- > 0;) {
          bool found = false;
          for (std::size_t c2 = 0; c2 < links[k].size() && !found; ++c2)
            if (std::find(links[k][c2].begin(), links[k][c2].end(), chain[k + 1]) != links[k][c2].end()) {
              chain[k] = c2;
              found = true;
            }
          if (!found) throw PreconditionError("dyadic_decompose: component misses its left neighbour");
        }
        for (std::size_t k = 0; k < count; ++k) covered[k][chain[k]] = true;
        d.chains.push_back(std::move(chain));
      }
    std::sort(d.chains.begin(), d.chains.end());
  }
  return d;
}

bool verify_decomposition(const PLGraph& g, const ChainDecomposition& d) {
  if (d.depth < 1 || d.depth > 20) return false;
  const std::size_t count = std::size_t{1} << d.depth;
  if (d.strips.size() != count || d.chains.empty()) return false;
  const PLGraph cg = canonicalize(g);

  for (std::size_t j = 0; j < count; ++j) {
    const Rat a = frac(j, count), b = frac(j + 1, count);
    const auto& st = d.strips[j];
    if (st.a != a || st.b != b) return false;
    std::vector<Seg> pieces;
    for (const Seg& s : cg.segs)
      if (auto c = clip_to_strip(s, a, b)) pieces.push_back(*c);
    UnionFind uf(pieces.size());
    for (std::size_t p = 0; p < pieces.size(); ++p)
      for (std::size_t q = p + 1; q < pieces.size(); ++q)
        if (!empty(seg_intersect(pieces[p], pieces[q]))) uf.unite(p, q);
    std::vector<std::vector<Seg>> truth;
    std::vector<std::size_t> roots;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      auto it = std::find(roots.begin(), roots.end(), uf.find(p));
      if (it == roots.end()) {
        roots.push_back(uf.find(p));
        truth.emplace_back();
        it = roots.end() - 1;
      }
      truth[it - roots.begin()].push_back(pieces[p]);
    }
    for (auto& t : truth) std::sort(t.begin(), t.end());
    std::sort(truth.begin(), truth.end());
    std::vector<std::vector<Seg>> claimed;
    for (const auto& c : st.components) {
      auto s = c.pieces;
      std::sort(s.begin(), s.end());
      claimed.push_back(std::move(s));
    }
    std::sort(claimed.begin(), claimed.end());
    if (claimed != truth) return false;
  }

  std::vector<std::vector<bool>> covered(count);
  for (std::size_t j = 0; j < count; ++j) covered[j].assign(d.strips[j].components.size(), false);
  for (const auto& chain : d.chains) {
    if (chain.size() != count) return false;
    for (std::size_t j = 0; j < count; ++j) {
      if (chain[j] >= d.strips[j].components.size()) return false;
      covered[j][chain[j]] = true;
      const auto& pcs = d.strips[j].components[chain[j]].pieces;
      const Rat a = frac(j, count), b = frac(j + 1, count);
      bool left = false, right = false;
      for (const Seg& s : pcs) {
        left = left || s.p().x == a;
        right = right || s.q().x == b;
      }
      if (!left || !right) return false;
      if (j > 0 && !pieces_meet(d.strips[j - 1].components[chain[j - 1]].pieces, pcs)) return false;
    }
    const std::vector<Seg> segs = [&] {
      std::vector<Seg> s;
      for (std::size_t j = 0; j < count; ++j) {
        const auto& p = d.strips[j].components[chain[j]].pieces;
        s.insert(s.end(), p.begin(), p.end());
      }
      return s;
    }();
    UnionFind uf(segs.size());
    for (std::size_t p = 0; p < segs.size(); ++p)
      for (std::size_t q = p + 1; q < segs.size(); ++q)
        if (!empty(seg_intersect(segs[p], segs[q]))) uf.unite(p, q);
    for (std::size_t p = 1; p < segs.size(); ++p)
      if (uf.find(p) != uf.find(0)) return false;
  }
  for (const auto& row : covered)
    if (std::find(row.begin(), row.end(), false) != row.end()) return false;
  return true;
}

std::vector<Seg> chain_segments(const ChainDecomposition& d, std::size_t chain) {
  std::vector<Seg> out;
  for (std::size_t j = 0; j < d.strips.size(); ++j) {
    const auto& p = d.strips[j].components[d.chains.at(chain)[j]].pieces;
    out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ivpkit
