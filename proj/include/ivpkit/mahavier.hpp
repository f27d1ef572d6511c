#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ivpkit/hsystem.hpp"
#include "ivpkit/plgraph.hpp"

namespace ivpkit {

/// One nonempty convex piece of G_n: the points (x_0..x_n) with (x_i, x_{i-1}) on
/// segment tuple[i-1] of f_i for every 1 <= i <= n.
struct Cell {
  std::vector<std::size_t> tuple;
  HSystem system;
};

struct CellComplex {
  int n = 0;
  std::vector<PLGraph> graphs;  // f_1..f_n
  std::uint64_t tuples_total = 0;
  std::vector<Cell> cells;      // feasible cells only, tuples in lexicographic order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, first < second
  bool bonding_surjective = false;
};

struct BuildOptions {
  std::uint64_t budget = 1'000'000;
  int threads = 0;
};

/// G_n for the bonding maps f_1..f_n. graphs[i-1] is f_i; a shorter list repeats
/// its last graph, so a single graph gives the single-map system. Throws
/// BudgetError when the product of segment counts exceeds the budget.
CellComplex build(const std::vector<PLGraph>& graphs, int n, const BuildOptions& opts = {});

struct ConnectivityVerdict {
  bool connected = true;
  std::size_t components = 0;
  /// For a disconnected complex: part[c] is 1 for cells of the smallest component
  /// (lowest cell index on ties) and 0 otherwise. Empty when connected.
  std::vector<int> part;
  std::vector<std::vector<Rat>> witness_points;  // one per side of the cut
  /// Disconnected G_n implies a disconnected inverse limit only under this flag.
  bool bonding_surjective = false;
};

ConnectivityVerdict is_connected(const CellComplex& cc);

/// A point of the cell, in its relative interior when the slack schedule allows.
std::vector<Rat> cell_witness(const Cell& c);

/// One point per feasible cell after restricting x_i to boxes[i].
std::vector<std::vector<Rat>> pivot_candidates(const CellComplex& cc, const std::vector<Interval>& boxes);

struct ReverseCheck {
  bool verdict_forward = false;
  bool verdict_reverse = false;
};

/// Connectedness of G_n(f_1..f_n) and of G_n(f_n^-1..f_1^-1). Throws
/// PreconditionError when some transposed graph is not domain-total.
ReverseCheck reverse_transpose_check(const std::vector<PLGraph>& graphs, int n, const BuildOptions& opts = {});

}  // namespace ivpkit
