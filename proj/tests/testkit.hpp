#pragma once

// Shared test helpers: seeded generators and reference oracles. The oracles avoid
// the library's algorithms and use only its value types.

#include <cstdint>
#include <random>
#include <vector>

#include "ivpkit/hsystem.hpp"
#include "ivpkit/plgraph.hpp"
#include "ivpkit/ssets.hpp"

namespace testkit {

using ivpkit::Frame;
using ivpkit::HSystem;
using ivpkit::Interval;
using ivpkit::Label;
using ivpkit::PLGraph;
using ivpkit::Pt;
using ivpkit::Rat;
using ivpkit::Seg;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(int num, int den) { return uniform(0, den - 1) < num; }
  /// k/den with k uniform in 0..den.
  Rat grid(int den) { return ivpkit::frac(uniform(0, den), den); }
  Pt grid_pt(int den) { return {grid(den), grid(den)}; }
  Seg seg(int den) { return Seg(grid_pt(den), grid_pt(den)); }

 private:
  std::mt19937_64 eng_;
};

/// Up to count random segments on a 1/den grid, with some points and verticals.
PLGraph random_soup(Rng& rng, int count, int den);

/// A random system over [-2,2]^dim with `rows` extra constraints whose integer
/// coefficients lie in [-2,2]; some rows are equalities.
HSystem random_system(Rng& rng, int dim, int rows);

// --- oracles -----------------------------------------------------------------

/// Feasibility by vertex enumeration: solves every dim-subset of constraints as
/// equalities and tests the solution. Valid for bounded systems.
bool vertex_feasible(const HSystem& sys);

/// Whether p lies on s, by the cross-product test and a bounding box.
bool on_seg(const Pt& p, const Seg& s);
bool on_graph(const PLGraph& g, const Pt& p);

/// f(x) as sorted disjoint closed intervals, computed segment by segment.
std::vector<Interval> values(const PLGraph& g, const Rat& x);

/// A point of s at parameter num/den.
Pt point_on(const Seg& s, int num, int den);

/// Region membership straight from the notation table.
bool in_region(Label l, const Frame& f, const Pt& p);
bool in_z(const Frame& f, const Pt& p);

/// Connectedness of G_n (n = 1 or 2, f_i = graphs[min(i, size) - 1]) by 26-connected
/// flood fill over the closed voxels of side 1/res that meet G_n, decided exactly.
bool voxel_connected(const std::vector<PLGraph>& graphs, int n, int res);

/// Connected components of a set of segments by pairwise contact, brute force.
std::size_t segment_components(const std::vector<Seg>& segs);

}  // namespace testkit
