#include <doctest.h>

#include "ivpkit/errors.hpp"
#include "ivpkit/fixtures.hpp"
#include "ivpkit/plgraph.hpp"
#include "ivpkit/strips.hpp"
#include "../testkit.hpp"

using namespace ivpkit;

namespace {

PLGraph G(const char* text) { return parse_graph(text); }
Pt P(const char* x, const char* y) { return {*parse_rat(x), *parse_rat(y)}; }
const PLGraph kDiag = parse_graph("seg 0 0 1 1");

std::vector<PLGraph> corpus() {
  std::vector<PLGraph> out;
  for (const auto& n : builtin_names()) out.push_back(builtin(n).graph);
  testkit::Rng rng(31);
  for (int k = 0; k < 40; ++k) out.push_back(testkit::random_soup(rng, rng.uniform(1, 5), 8));
  for (std::uint64_t s = 0; s < 20; ++s) out.push_back(random_graph(s, Profile::WivpBiased));
  return out;
}

}  // namespace

TEST_SUITE("plgraph") {

TEST_CASE("parsing") {
  PLGraph d = G("seg 0 0 1 1");
  REQUIRE(d.segs.size() == 1);
  CHECK(d.segs[0] == Seg({0, 0}, {1, 1}));

  PLGraph e = G("# two parallel lines\ngraph ex42\nseg 0 0 1 2/3\nseg 0 1/3 1 1\n");
  CHECK(e.name == "ex42");
  CHECK(e.segs.size() == 2);
  CHECK(e == builtin("ex42").graph);

  PLGraph p = G("point 1/2 1/4");
  CHECK(p.segs[0].degenerate());

  CHECK_THROWS_AS(G("seg 0 0 2 0"), ParseError);
  CHECK_THROWS_AS(G("seg 0 0 1"), ParseError);
  CHECK_THROWS_AS(G("seg 0 0 1 x"), ParseError);
  CHECK_THROWS_AS(G("seg 0 0 1 2/4"), ParseError);  // not in lowest terms
  try {
    G("seg 0 0 1 1\n\nseg 0 0 1 -1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
  }
  auto seq = parse_graphs("graph a\nseg 0 0 1 1\ngraph b\nseg 0 1 1 0\n");
  REQUIRE(seq.size() == 2);
  CHECK(seq[1].name == "b");
  CHECK_THROWS_AS(parse_graph("graph a\nseg 0 0 1 1\ngraph b\nseg 0 1 1 0\n"), ParseError);
}

TEST_CASE("serialize and parse round-trip on canonical graphs") {
  for (const auto& g : corpus()) {
    PLGraph c = canonicalize(g);
    CHECK(parse_graph(serialize(c)) == c);
    CHECK(serialize(parse_graph(serialize(c))) == serialize(c));
  }
}

TEST_CASE("canonicalize examples") {
  PLGraph twice = G("seg 0 0 1 1\nseg 0 0 1 1");
  CHECK(canonicalize(twice).segs == kDiag.segs);

  PLGraph x = canonicalize(G("seg 0 0 1 1\nseg 0 1 1 0"));
  CHECK(x.segs.size() == 4);
  for (const auto& s : x.segs) CHECK((s.p() == P("1/2", "1/2") || s.q() == P("1/2", "1/2")));

  // The two branches cross at (2/3, 1/3) and are split there.
  PLGraph e41 = canonicalize(builtin("ex41_half").graph);
  CHECK(e41.segs.size() == 4);
  for (const auto& s : e41.segs) CHECK((s.p() == P("2/3", "1/3") || s.q() == P("2/3", "1/3")));

  // Overlapping collinear pieces merge into one run.
  CHECK(canonicalize(G("seg 0 0 1/2 1/2\nseg 1/4 1/4 1 1")).segs == kDiag.segs);
  // A point on a segment disappears; a point off it stays.
  CHECK(canonicalize(G("seg 0 0 1 1\npoint 1/2 1/2")).segs == kDiag.segs);
  CHECK(canonicalize(G("seg 0 0 1 1\npoint 0 1")).segs.size() == 2);
}

TEST_CASE("canonicalize is idempotent and keeps the point set") {
  testkit::Rng rng(32);
  for (const auto& g : corpus()) {
    PLGraph c = canonicalize(g);
    CHECK(canonicalize(c) == c);
    // Points on the original lie on the canonical form and vice versa.
    for (int k = 0; k < 1000; ++k) {
      const auto& src = k % 2 ? g : c;
      const auto& dst = k % 2 ? c : g;
      if (src.segs.empty()) break;
      const Seg& s = src.segs[rng.uniform(0, static_cast<int>(src.segs.size()) - 1)];
      Pt p = testkit::point_on(s, rng.uniform(0, 64), 64);
      REQUIRE(testkit::on_graph(dst, p));
      // Random grid points: membership agrees.
      Pt q = rng.grid_pt(16);
      REQUIRE(contains(c, q) == testkit::on_graph(g, q));
    }
  }
}

TEST_CASE("validate") {
  CHECK(validate(kDiag).domain_total);
  auto r = validate(G("seg 0 0 1/2 1/2"));
  CHECK(!r.domain_total);
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0] == Span{Rat(1, 2), 1, true, false});
  CHECK(validate(builtin("ex44").graph).domain_total);
  auto two = validate(G("seg 1/4 0 1/2 0\nseg 3/4 0 1 0"));
  CHECK(two.gaps.size() == 2);
  CHECK(two.gaps[0] == Span{0, Rat(1, 4), false, true});
  CHECK(two.gaps[1] == Span{Rat(1, 2), Rat(3, 4), true, true});
}

TEST_CASE("values_at") {
  auto v = values_at(builtin("ex44").graph, 1);
  REQUIRE(v.intervals.size() == 1);
  CHECK(v.intervals[0] == Interval{0, 1});
  v = values_at(builtin("ex42").graph, Rat(1, 2));
  REQUIRE(v.intervals.size() == 2);
  CHECK(v.intervals[0] == Interval{Rat(1, 3), Rat(1, 3)});
  CHECK(v.intervals[1] == Interval{Rat(2, 3), Rat(2, 3)});
  v = values_at(kDiag, Rat(1, 3));
  CHECK(v.intervals == std::vector<Interval>{{Rat(1, 3), Rat(1, 3)}});
}

TEST_CASE("values_at matches the segment-by-segment oracle") {
  testkit::Rng rng(33);
  for (const auto& g : corpus())
    for (int k = 0; k <= 16; ++k) {
      Rat x = frac(k, 16);
      REQUIRE(values_at(g, x).intervals == testkit::values(g, x));
    }
}

TEST_CASE("surjectivity") {
  auto r = is_surjective(builtin("ex43").graph);
  CHECK(!r.surjective);
  REQUIRE(r.uncovered.size() == 1);
  CHECK(r.uncovered[0] == Span{0, Rat(1, 4), false, true});
  CHECK(is_surjective(builtin("ex41_half").graph).surjective);
  CHECK(is_surjective(kDiag).surjective);
}

TEST_CASE("graph connectivity") {
  auto r = is_graph_connected(builtin("ex42").graph);
  CHECK(!r.connected);
  CHECK(r.components.size() == 2);
  CHECK(is_graph_connected(builtin("ex41_half").graph).connected);
  CHECK(is_graph_connected(builtin("ex44").graph).connected);
}

TEST_CASE("graph connectivity agrees with brute-force contact components") {
  for (const auto& g : corpus()) {
    PLGraph c = canonicalize(g);
    if (c.segs.empty()) continue;
    CHECK(is_graph_connected(g).components.size() == testkit::segment_components(c.segs));
  }
}

TEST_CASE("values_all_connected") {
  CHECK(values_all_connected(kDiag).holds);
  auto r = values_all_connected(builtin("ex42").graph);
  CHECK(!r.holds);
  REQUIRE(r.witness_x);
  CHECK(testkit::values(builtin("ex42").graph, *r.witness_x).size() == 2);
  r = values_all_connected(builtin("ex44").graph);
  CHECK(!r.holds);
  CHECK(*r.witness_x == Rat(1, 8));
  CHECK_THROWS_AS(values_all_connected(G("seg 0 0 1/2 1/2")), PreconditionError);
}

TEST_CASE("transpose") {
  CHECK(canonicalize(transpose(kDiag)) == canonicalize(kDiag));
  auto t = transpose(builtin("ex43").graph);
  auto r = validate(t);
  CHECK(!r.domain_total);
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0] == Span{0, Rat(1, 4), false, true});
  for (const auto& g : corpus()) CHECK(canonicalize(transpose(transpose(g))) == canonicalize(g));
}

TEST_CASE("composition examples") {
  PLGraph half = G("seg 0 0 1 1/2");
  CHECK(compose(half, half).segs == G("seg 0 0 1 1/4").segs);
  for (const auto& n : builtin_names()) {
    PLGraph g = builtin(n).graph;
    CHECK(compose(kDiag, g).segs == canonicalize(g).segs);
    CHECK(compose(g, kDiag).segs == canonicalize(g).segs);
  }

  PLGraph sq = power(builtin("ex41_half").graph, 2);
  PLGraph expected = G("seg 0 0 1 1/4\nseg 1/2 0 1 1/2\nseg 3/4 0 1 1\npoint 1 0");
  CHECK(sq.segs == canonicalize(expected).segs);
  CHECK(isolated_points(sq) == std::vector<Pt>{P("1", "0")});

  PLGraph sq3 = power(builtin("ex41_third").graph, 2);
  CHECK(isolated_points(sq3).empty());
  auto v = values_at(sq3, 1);
  CHECK(v.intervals ==
        std::vector<Interval>{{Rat(1, 9), Rat(1, 9)}, {Rat(1, 3), Rat(1, 3)}, {1, 1}});

  // A horizontal run fed into a vertical one sweeps out a rectangle.
  CHECK_THROWS_AS(compose(G("seg 1/2 0 1/2 1"), G("seg 0 1/2 1 1/2")), AreaError);
}

TEST_CASE("composition matches pointwise composition of values") {
  // f(g(x)) computed from the oracle's value sets at points where g is single-valued.
  std::vector<std::string> names{"identity", "tent", "ex41_half", "ex41_third", "ex42", "full_jump"};
  for (const auto& fn : names)
    for (const auto& gn : names) {
      PLGraph f = builtin(fn).graph, g = builtin(gn).graph;
      PLGraph fg = compose(f, g);
      for (int k = 0; k <= 24; ++k) {
        Rat x = frac(k, 24);
        std::vector<Interval> want;
        for (const auto& iv : testkit::values(g, x)) {
          if (iv.lo != iv.hi) continue;
          for (const auto& w : testkit::values(f, iv.lo)) want.push_back(w);
        }
        for (const auto& w : want)
          if (w.lo == w.hi) CHECK(contains(fg, {x, w.lo}));
      }
    }
}

TEST_CASE("composition is associative and transposes in reverse order") {
  std::vector<std::string> names{"identity", "tent", "ex41_half", "ex42", "full_jump"};
  for (const auto& a : names)
    for (const auto& b : names) {
      PLGraph f = builtin(a).graph, g = builtin(b).graph;
      CHECK(canonicalize(transpose(compose(f, g))).segs == compose(transpose(g), transpose(f)).segs);
      for (const auto& c : {"tent", "ex41_half"}) {
        PLGraph h = builtin(c).graph;
        CHECK(compose(f, compose(g, h)).segs == compose(compose(f, g), h).segs);
      }
    }
}

TEST_CASE("isolated points") {
  CHECK(isolated_points(kDiag).empty());
  CHECK(isolated_points(canonicalize(G("seg 0 0 1 1\npoint 0 1"))) == std::vector<Pt>{P("0", "1")});
}

TEST_CASE("connected graphs have a spanning component in every strip") {
  for (const auto& g : corpus()) {
    if (!validate(g).domain_total || !is_graph_connected(g).connected) continue;
    Arrangement arr(g);
    const auto& xs = arr.probe_xs();
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        auto sa = strip_components(arr, xs[i], xs[j]);
        bool spans = std::any_of(sa.components.begin(), sa.components.end(),
                                 [](const StripComponent& c) { return c.touches_left && c.touches_right; });
        REQUIRE(spans);
      }
  }
}

}  // TEST_SUITE
