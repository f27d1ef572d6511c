#include "ivpkit/plgraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ivpkit/errors.hpp"
#include "ivpkit/hsystem.hpp"

namespace ivpkit {

bool ValueSet::contains(const Rat& y) const {
  return std::any_of(intervals.begin(), intervals.end(), [&](const Interval& i) { return i.contains(y); });
}

// --- parsing -----------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

Rat parse_coord(std::string_view tok, std::size_t line) {
  auto r = parse_rat(tok);
  if (!r) throw ParseError(line, "malformed rational '" + std::string(tok) + "'");
  if (to_string(*r) != tok && !(tok.front() == '+' && to_string(*r) == tok.substr(1)))
    throw ParseError(line, "rational '" + std::string(tok) + "' is not in lowest terms");
  if (*r < 0 || *r > 1) throw ParseError(line, "coordinate " + std::string(tok) + " outside [0,1]");
  return *r;
}

}  // namespace

std::vector<PLGraph> parse_graphs(std::string_view text) {
  std::vector<PLGraph> graphs;
  bool open = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto& kw = toks.front();
    if (kw == "graph") {
      PLGraph g;
      std::string name;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) name += ' ';
        name += toks[i];
      }
      g.name = name;
      graphs.push_back(std::move(g));
      open = true;
    } else if (kw == "seg" || kw == "point") {
      const std::size_t arity = kw == "seg" ? 4 : 2;
      if (toks.size() != arity + 1)
        throw ParseError(lineno, "'" + std::string(kw) + "' expects " + std::to_string(arity) + " coordinates");
      std::vector<Rat> c;
      for (std::size_t i = 1; i <= arity; ++i) c.push_back(parse_coord(toks[i], lineno));
      if (!open) {
        graphs.emplace_back();
        open = true;
      }
      Pt a{c[0], c[1]};
      graphs.back().segs.push_back(arity == 4 ? Seg(a, Pt{c[2], c[3]}) : Seg::point(a));
    } else {
      throw ParseError(lineno, "unknown record '" + std::string(kw) + "'");
    }
    if (end == text.size()) break;
  }
  return graphs;
}

PLGraph parse_graph(std::string_view text) {
  auto gs = parse_graphs(text);
  if (gs.size() != 1) throw ParseError(1, "expected exactly one graph, found " + std::to_string(gs.size()));
  return std::move(gs.front());
}

std::vector<PLGraph> read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graphs(ss.str());
}

std::string serialize(const PLGraph& g) {
  std::vector<Seg> segs = g.segs;
  std::sort(segs.begin(), segs.end());
  std::string out = "graph";
  if (!g.name.empty()) out += " " + g.name;
  out += "\n";
  for (const auto& s : segs) {
    if (s.degenerate()) {
      out += "point " + to_string(s.p().x) + " " + to_string(s.p().y) + "\n";
    } else {
      out += "seg " + to_string(s.p().x) + " " + to_string(s.p().y) + " " + to_string(s.q().x) + " " +
             to_string(s.q().y) + "\n";
    }
  }
  return out;
}

std::string serialize(std::span<const PLGraph> gs) {
  std::string out;
  for (const auto& g : gs) out += serialize(g);
  return out;
}

// --- canonical form ------------------------------------------------------------

namespace {

void sort_unique(std::vector<Seg>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Joins collinear pieces meeting at a point touched by nothing else.
void merge_runs(std::vector<Seg>& pieces) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Pt, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      incident[pieces[i].p()].push_back(i);
      incident[pieces[i].q()].push_back(i);
    }
    for (const auto& [v, ids] : incident) {
      if (ids.size() != 2) continue;
      const Seg& a = pieces[ids[0]];
      const Seg& b = pieces[ids[1]];
      const Seg& first = a.q() == v ? a : b;
      const Seg& second = a.q() == v ? b : a;
      if (!(first.q() == v && second.p() == v)) continue;
      if (orient(first.p(), first.q(), second.q()) != 0) continue;
      Seg merged(first.p(), second.q());
      std::size_t hi = std::max(ids[0], ids[1]), lo = std::min(ids[0], ids[1]);
      pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(hi));
      pieces[lo] = merged;
      changed = true;
      break;
    }
  }
}

}  // namespace

PLGraph canonicalize(const PLGraph& g) {
  std::vector<Seg> lines, points;
  for (const auto& s : g.segs) (s.degenerate() ? points : lines).push_back(s);
  sort_unique(lines);
  sort_unique(points);

  std::vector<Seg> pieces;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<Pt> cuts{lines[i].p(), lines[i].q()};
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (i == j) continue;
      auto r = seg_intersect(lines[i], lines[j]);
      if (auto* pt = std::get_if<Pt>(&r)) {
        cuts.push_back(*pt);
      } else if (auto* ov = std::get_if<Seg>(&r)) {
        cuts.push_back(ov->p());
        cuts.push_back(ov->q());
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) pieces.emplace_back(cuts[k], cuts[k + 1]);
  }
  sort_unique(pieces);
  merge_runs(pieces);

  for (const auto& pt : points) {
    bool covered = std::any_of(pieces.begin(), pieces.end(), [&](const Seg& s) { return on_segment(pt.p(), s); });
    if (!covered) pieces.push_back(pt);
  }
  sort_unique(pieces);
  return PLGraph{std::move(pieces), g.name};
}

bool contains(const PLGraph& g, const Pt& p) {
  return std::any_of(g.segs.begin(), g.segs.end(), [&](const Seg& s) { return on_segment(p, s); });
}

namespace {

std::vector<Rat> critical_coords(const PLGraph& g, bool use_x) {
  auto coord = [use_x](const Pt& p) -> const Rat& { return use_x ? p.x : p.y; };
  std::vector<Rat> out{Rat(0), Rat(1)};
  for (std::size_t i = 0; i < g.segs.size(); ++i) {
    out.push_back(coord(g.segs[i].p()));
    out.push_back(coord(g.segs[i].q()));
    for (std::size_t j = i + 1; j < g.segs.size(); ++j) {
      auto r = seg_intersect(g.segs[i], g.segs[j]);
      if (auto* pt = std::get_if<Pt>(&r)) {
        out.push_back(coord(*pt));
      } else if (auto* ov = std::get_if<Seg>(&r)) {
        out.push_back(coord(ov->p()));
        out.push_back(coord(ov->q()));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Union of closed intervals, merged; then its complement inside [0,1].
std::vector<Span> uncovered(std::vector<Interval> cover) {
  std::sort(cover.begin(), cover.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (auto& iv : cover) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  std::vector<Span> gaps;
  if (merged.empty()) {
    gaps.push_back({Rat(0), Rat(1), false, false});
    return gaps;
  }
  if (merged.front().lo > 0) gaps.push_back({Rat(0), merged.front().lo, false, true});
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) gaps.push_back({merged[i].hi, merged[i + 1].lo, true, true});
  if (merged.back().hi < 1) gaps.push_back({merged.back().hi, Rat(1), true, false});
  return gaps;
}

}  // namespace

std::vector<Rat> critical_xs(const PLGraph& g) { return critical_coords(g, true); }
std::vector<Rat> critical_ys(const PLGraph& g) { return critical_coords(g, false); }

ValidationReport validate(const PLGraph& g) {
  std::vector<Interval> cover;
  for (const auto& s : g.segs) cover.push_back({s.p().x, s.q().x});
  ValidationReport r;
  r.gaps = uncovered(std::move(cover));
  r.domain_total = r.gaps.empty();
  return r;
}

SurjectivityReport is_surjective(const PLGraph& g) {
  std::vector<Interval> cover;
  for (const auto& s : g.segs) cover.push_back({std::min(s.p().y, s.q().y), std::max(s.p().y, s.q().y)});
  SurjectivityReport r;
  r.uncovered = uncovered(std::move(cover));
  r.surjective = r.uncovered.empty();
  return r;
}

ValueSet values_at(const PLGraph& g, const Rat& x) {
  std::vector<Interval> hits;
  for (const auto& s : g.segs) {
    if (x < s.p().x || x > s.q().x) continue;
    if (s.vertical())
      hits.push_back({s.p().y, s.q().y});
    else {
      Rat y = y_at(s, x);
      hits.push_back({y, y});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  ValueSet vs;
  for (auto& iv : hits) {
    if (!vs.intervals.empty() && iv.lo <= vs.intervals.back().hi) {
      if (iv.hi > vs.intervals.back().hi) vs.intervals.back().hi = iv.hi;
    } else {
      vs.intervals.push_back(iv);
    }
  }
  return vs;
}

GraphConnectivity is_graph_connected(const PLGraph& g) {
  PLGraph c = canonicalize(g);
  const std::size_t n = c.segs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!empty(seg_intersect(c.segs[i], c.segs[j]))) parent[find(i)] = find(j);

  std::map<std::size_t, std::size_t> slot;
  GraphConnectivity out;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = slot.try_emplace(find(i), out.components.size());
    if (fresh) out.components.emplace_back();
    out.components[it->second].push_back(c.segs[i]);
  }
  out.connected = out.components.size() == 1;
  return out;
}

ValuesConnectivity values_all_connected(const PLGraph& g) {
  if (!validate(g).domain_total) throw PreconditionError("values_all_connected: graph is not domain-total");
  auto xs = critical_xs(g);
  std::vector<Rat> probes;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    probes.push_back(xs[i]);
    if (i + 1 < xs.size()) probes.push_back(midpoint(xs[i], xs[i + 1]));
  }
  for (const auto& x : probes)
    if (!values_at(g, x).connected()) return {false, x};
  return {true, std::nullopt};
}

PLGraph transpose(const PLGraph& g) {
  PLGraph t;
  t.name = g.name;
  for (const auto& s : g.segs) t.segs.emplace_back(Pt{s.p().y, s.p().x}, Pt{s.q().y, s.q().x});
  std::sort(t.segs.begin(), t.segs.end());
  return t;
}

namespace {

Rat lo_y(const Seg& s) { return std::min(s.p().y, s.q().y); }
Rat hi_y(const Seg& s) { return std::max(s.p().y, s.q().y); }

// (x, z) piece contributed by one pair: (x, y) on inner, (y, z) on outer.
std::optional<Seg> compose_pair(const Seg& outer, const Seg& inner) {
  if (hi_y(inner) < outer.p().x || lo_y(inner) > outer.q().x) return std::nullopt;
  HSystem sys(3);
  sys.point_on_segment(0, 1, inner);
  sys.point_on_segment(1, 2, outer);
  HSystem xz = eliminate(sys, 1);
  auto xr = variable_range(xz, 0);
  if (!xr) return std::nullopt;
  auto z_slice = [&](const Rat& x) {
    HSystem fixed = xz;
    fixed.fix_var(0, x);
    auto zr = variable_range(fixed, 1);
    return *zr;
  };
  const Rat& xlo = *xr->lo;
  const Rat& xhi = *xr->hi;
  if (xlo == xhi) {
    Range zr = z_slice(xlo);
    return Seg(Pt{xlo, *zr.lo}, Pt{xlo, *zr.hi});
  }
  Range mid = z_slice(midpoint(xlo, xhi));
  if (*mid.lo != *mid.hi) throw AreaError("composition contains a two-dimensional piece");
  Range left = z_slice(xlo);
  Range right = z_slice(xhi);
  return Seg(Pt{xlo, *left.lo}, Pt{xhi, *right.lo});
}

}  // namespace

PLGraph compose(const PLGraph& f, const PLGraph& g) {
  PLGraph out;
  for (const auto& inner : g.segs)
    for (const auto& outer : f.segs)
      if (auto s = compose_pair(outer, inner)) out.segs.push_back(*s);
  out.name = f.name == g.name ? f.name : f.name + "_o_" + g.name;
  return canonicalize(out);
}

PLGraph power(const PLGraph& f, int k) {
  if (k < 1) throw std::invalid_argument("power: exponent must be >= 1");
  PLGraph acc = canonicalize(f);
  for (int i = 1; i < k; ++i) acc = compose(f, acc);
  acc.name = f.name;
  return acc;
}

std::vector<Pt> isolated_points(const PLGraph& g) {
  std::vector<Pt> out;
  for (const auto& s : g.segs) {
    if (!s.degenerate()) continue;
    bool touched = std::any_of(g.segs.begin(), g.segs.end(),
                               [&](const Seg& t) { return !(t == s) && on_segment(s.p(), t); });
    if (!touched) out.push_back(s.p());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ivpkit
