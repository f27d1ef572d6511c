#include <doctest.h>

#include "ivpkit/errors.hpp"
#include "ivpkit/fixtures.hpp"
#include "ivpkit/mahavier.hpp"
#include "../testkit.hpp"

using namespace ivpkit;

namespace {

bool on_graph_xy(const PLGraph& g, const Rat& x, const Rat& y) { return testkit::on_graph(g, {x, y}); }

// x_{i-1} in f_i(x_i) for every i.
bool in_gn(const CellComplex& cc, const std::vector<Rat>& x) {
  for (int i = 1; i <= cc.n; ++i)
    if (!on_graph_xy(cc.graphs[i - 1], x[i], x[i - 1])) return false;
  return true;
}

std::vector<std::string> surjective_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : builtin_names())
    if (is_surjective(builtin(n).graph).surjective) out.push_back(n);
  return out;
}

}  // namespace

TEST_SUITE("mahavier") {

TEST_CASE("build examples") {
  auto id = build({builtin("identity").graph}, 3);
  CHECK(id.cells.size() == 1);
  CHECK(id.graphs.size() == 3);

  auto e1 = build({builtin("ex41_half").graph}, 1);
  CHECK(e1.cells.size() == 2);
  CHECK(e1.edges.size() == 1);

  CHECK_THROWS_AS(build({builtin("ex44").graph}, 12, {1000, 0}), BudgetError);
}

TEST_CASE("ex44 at n = 2: cells match the segment tuples that meet") {
  PLGraph g = builtin("ex44").graph;
  auto cc = build({g}, 2);
  // Brute force: a tuple (s1, s2) is feasible iff some x1 has a point of s1 over it
  // and a point of s2 at height x1. Check on a 1/64 grid for x1 and directly.
  std::vector<Seg> segs = g.segs;
  std::sort(segs.begin(), segs.end());
  std::size_t expect = 0;
  for (const auto& s1 : segs)
    for (const auto& s2 : segs) {
      bool hit = false;
      for (int k = 0; k <= 64 && !hit; ++k) {
        Rat x1 = frac(k, 64);
        bool a = !testkit::values(PLGraph{{s1}, ""}, x1).empty();
        bool b = false;
        for (int j = 0; j <= 64 && !b; ++j) b = testkit::on_seg({frac(j, 64), x1}, s2);
        hit = a && b;
      }
      if (hit) ++expect;
    }
  CHECK(cc.cells.size() == expect);
}

TEST_CASE("connectedness examples") {
  for (int n = 1; n <= 6; ++n) CHECK(is_connected(build({builtin("identity").graph}, n)).connected);

  auto cc = build({builtin("ex41_half").graph}, 2);
  auto v = is_connected(cc);
  CHECK(!v.connected);
  CHECK(v.bonding_surjective);
  REQUIRE(v.witness_points.size() == 2);
  CHECK(v.witness_points[1] == std::vector<Rat>{0, Rat(1, 2), 1});

  for (int n = 1; n <= 4; ++n) CHECK(is_connected(build({builtin("ex44").graph}, n)).connected);
}

TEST_CASE("the cut is valid and the witnesses lie on their sides") {
  for (const auto& name : builtin_names())
    for (int n = 1; n <= 3; ++n) {
      auto cc = build({builtin(name).graph}, n);
      auto v = is_connected(cc);
      if (v.connected) {
        CHECK(v.part.empty());
        continue;
      }
      REQUIRE(v.part.size() == cc.cells.size());
      for (const auto& [a, b] : cc.edges) CHECK(v.part[a] == v.part[b]);
      for (int side = 0; side < 2; ++side) {
        const auto& w = v.witness_points[side];
        CHECK(in_gn(cc, w));
        bool found = false;
        for (std::size_t k = 0; k < cc.cells.size(); ++k)
          if (v.part[k] == side && cc.cells[k].system.satisfied_by(w)) found = true;
        CHECK(found);
      }
    }
}

TEST_CASE("cell witnesses satisfy their systems and project into the graphs") {
  for (const auto& name : builtin_names())
    for (int n = 1; n <= 3; ++n) {
      auto cc = build({builtin(name).graph}, n);
      for (const auto& c : cc.cells) {
        auto w = cell_witness(c);
        REQUIRE(c.system.satisfied_by(w));
        REQUIRE(in_gn(cc, w));
      }
    }
}

TEST_CASE("adjacency means the cells share a point") {
  auto cc = build({builtin("ex44").graph}, 2);
  for (std::size_t a = 0; a < cc.cells.size(); ++a)
    for (std::size_t b = a + 1; b < cc.cells.size(); ++b) {
      HSystem both = cc.cells[a].system;
      both.append(cc.cells[b].system);
      bool edge = std::binary_search(cc.edges.begin(), cc.edges.end(), std::make_pair(a, b));
      CHECK(edge == testkit::vertex_feasible(both));
    }
}

TEST_CASE("disconnection persists at higher levels for surjective maps") {
  for (const auto& name : surjective_fixtures())
    for (int n = 1; n <= 2; ++n) {
      if (is_connected(build({builtin(name).graph}, n)).connected) continue;
      for (int m = n + 1; m <= n + 2; ++m) CHECK_MESSAGE(!is_connected(build({builtin(name).graph}, m)).connected, name);
    }
}

TEST_CASE("agreement with the voxel flood fill") {
  std::vector<PLGraph> graphs;
  for (const auto& name : builtin_names()) graphs.push_back(builtin(name).graph);
  for (std::uint64_t s = 0; graphs.size() < 20; ++s) {
    PLGraph g = random_graph(s, Profile::SegmentSoup);
    if (validate(g).domain_total && g.segs.size() <= 4) graphs.push_back(g);
  }
  for (const auto& g : graphs)
    for (int n = 1; n <= 2; ++n) {
      bool exact = is_connected(build({g}, n)).connected;
      CHECK_MESSAGE(exact == testkit::voxel_connected({g}, n, 128), g.name << " n=" << n << "\n" << serialize(g));
    }
}

TEST_CASE("pivot candidates") {
  auto id = build({builtin("identity").graph}, 2);
  auto c = pivot_candidates(id, {{0, Rat(1, 4)}, {0, Rat(1, 4)}, {0, Rat(1, 4)}});
  REQUIRE(c.size() == 1);
  CHECK(c[0][0] == c[0][1]);
  CHECK(c[0][1] == c[0][2]);
  CHECK(c[0][0] <= Rat(1, 4));

  auto e = build({builtin("ex41_half").graph}, 2);
  auto p = pivot_candidates(e, {{0, Rat(1, 4)}, {Rat(3, 8), Rat(5, 8)}, {Rat(3, 4), 1}});
  CHECK(std::find(p.begin(), p.end(), std::vector<Rat>{0, Rat(1, 2), 1}) != p.end());
  for (const auto& x : p) CHECK(in_gn(e, x));

  CHECK(pivot_candidates(id, {{0, Rat(1, 4)}, {Rat(1, 2), 1}, {0, 1}}).empty());
}

TEST_CASE("reverse-transpose verdicts") {
  auto r = reverse_transpose_check({builtin("identity").graph}, 2);
  CHECK(r.verdict_forward);
  CHECK(r.verdict_reverse);
  r = reverse_transpose_check({builtin("ex41_half").graph}, 2);
  CHECK(!r.verdict_forward);
  CHECK(!r.verdict_reverse);
  for (const auto& name : surjective_fixtures())
    for (int n = 1; n <= 3; ++n) {
      r = reverse_transpose_check({builtin(name).graph}, n);
      CHECK_MESSAGE(r.verdict_forward == r.verdict_reverse, name << " n=" << n);
    }
  CHECK_THROWS_AS(reverse_transpose_check({builtin("ex43").graph}, 2), PreconditionError);
}

TEST_CASE("mixed sequences and thread counts") {
  std::vector<PLGraph> seq{builtin("tent").graph, builtin("ex41_half").graph};
  auto a = build(seq, 3, {1'000'000, 1});
  auto b = build(seq, 3, {1'000'000, 4});
  CHECK(a.edges == b.edges);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k) CHECK(a.cells[k].tuple == b.cells[k].tuple);
  CHECK(a.graphs[0] == seq[0]);
  CHECK(a.graphs[2] == seq[1]);
}

}  // TEST_SUITE
