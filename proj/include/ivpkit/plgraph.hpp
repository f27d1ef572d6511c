#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivpkit/geometry.hpp"

namespace ivpkit {

/// Graph of a set-valued map f: [0,1] -> 2^[0,1] as a finite union of closed
/// segments (degenerate ones are isolated points). Points are (x, y) with y in f(x).
struct PLGraph {
  std::vector<Seg> segs;
  std::string name;

  friend bool operator==(const PLGraph&, const PLGraph&) = default;
};

/// f(x) for one x: sorted, pairwise disjoint closed intervals.
struct ValueSet {
  std::vector<Interval> intervals;

  bool empty() const { return intervals.empty(); }
  bool connected() const { return intervals.size() == 1; }
  bool contains(const Rat& y) const;
};

// --- text format -----------------------------------------------------------
//
//   # comment
//   graph NAME          starts a new graph (optional for single-graph files)
//   seg AX AY BX BY     closed segment, coordinates "n" or "p/q" in [0,1]
//   point AX AY         isolated point

/// All graphs in the text, in file order. Throws ParseError.
std::vector<PLGraph> parse_graphs(std::string_view text);
/// Exactly one graph; throws ParseError otherwise.
PLGraph parse_graph(std::string_view text);
std::vector<PLGraph> read_graph_file(const std::string& path);

/// Canonical text: header first, segments sorted, one record per line.
std::string serialize(const PLGraph& g);
std::string serialize(std::span<const PLGraph> gs);

// --- structure ---------------------------------------------------------------

/// Unique representation of the point set: segments split at every contact with
/// another segment, collinear overlaps resolved, maximal straight runs merged back
/// where nothing else touches, isolated points only when they lie on no segment,
/// sorted. Idempotent.
PLGraph canonicalize(const PLGraph& g);

/// Exact membership of p in the union of segments.
bool contains(const PLGraph& g, const Pt& p);

/// {0, 1} plus the x-coordinates of all endpoints and pairwise contacts, sorted.
std::vector<Rat> critical_xs(const PLGraph& g);
/// Same on the y axis.
std::vector<Rat> critical_ys(const PLGraph& g);

struct ValidationReport {
  bool domain_total = false;
  std::vector<Span> gaps;  // maximal x-ranges in [0,1] with f(x) empty
};
ValidationReport validate(const PLGraph& g);

ValueSet values_at(const PLGraph& g, const Rat& x);

struct SurjectivityReport {
  bool surjective = false;
  std::vector<Span> uncovered;  // maximal y-ranges hit by no x
};
SurjectivityReport is_surjective(const PLGraph& g);

struct GraphConnectivity {
  bool connected = false;
  std::vector<std::vector<Seg>> components;  // of the canonical graph
};
GraphConnectivity is_graph_connected(const PLGraph& g);

struct ValuesConnectivity {
  bool holds = true;
  std::optional<Rat> witness_x;  // an x with f(x) disconnected
};
/// Whether every f(x) is a single interval. Throws PreconditionError when the
/// graph is not domain-total.
ValuesConnectivity values_all_connected(const PLGraph& g);

/// Graph of the inverse relation (coordinates swapped).
PLGraph transpose(const PLGraph& g);

/// Graph of f ∘ g: {(x, z) : exists y, (x, y) in G(g), (y, z) in G(f)}. g acts first,
/// so compose(f, f) is f². Throws AreaError if the result has a 2-dimensional piece.
PLGraph compose(const PLGraph& f, const PLGraph& g);
/// f^k, k >= 1.
PLGraph power(const PLGraph& f, int k);

/// Points of the graph with a neighbourhood meeting the graph only in themselves.
std::vector<Pt> isolated_points(const PLGraph& g);

}  // namespace ivpkit
