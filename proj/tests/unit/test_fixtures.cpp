#include <doctest.h>

#include "ivpkit/fixtures.hpp"
#include "ivpkit/mahavier.hpp"
#include "ivpkit/strips.hpp"

using namespace ivpkit;

namespace {

// Every predicate named in a fixture table, computed by the deciders.
bool decide(const std::string& key, const PLGraph& g) {
  if (key == pred::domain_total) return validate(g).domain_total;
  if (key == pred::surjective) return is_surjective(g).surjective;
  if (key == pred::graph_connected) return is_graph_connected(g).connected;
  if (key == pred::wivp) return has_wivp(g).holds;
  if (key == pred::ivp) return has_ivp(g).holds;
  if (key == pred::values_connected) return values_all_connected(g).holds;
  if (key == pred::square_isolated_point) return !isolated_points(power(g, 2)).empty();
  if (key == pred::mahavier_n2_connected) return is_connected(build({g}, 2)).connected;
  if (key == pred::mahavier_n4_connected) return is_connected(build({g}, 4)).connected;
  FAIL("unknown predicate " << key);
  return false;
}

}  // namespace

TEST_SUITE("fixtures") {

TEST_CASE("builtin geometry") {
  CHECK(builtin_names().size() == 8);
  CHECK(builtin("ex41_half").graph == parse_graph("graph ex41_half\nseg 0 0 1 1/2\nseg 1/2 0 1 1\n"));
  CHECK(builtin("ex41_third").graph == parse_graph("graph ex41_third\nseg 0 0 1 1/3\nseg 1/2 0 1 1\n"));
  CHECK(canonicalize(builtin("ex44").graph).segs ==
        canonicalize(parse_graph("seg 0 0 1/4 1/4\nseg 0 0 1 0\nseg 1 0 1 1")).segs);
  CHECK(canonicalize(builtin("tent").graph).segs == canonicalize(parse_graph("seg 0 0 1/2 1\nseg 1/2 1 1 0")).segs);
  CHECK_THROWS_AS(builtin("ex45"), std::invalid_argument);
}

TEST_CASE("expected tables are reproduced by the deciders") {
  for (const auto& name : builtin_names()) {
    Fixture f = builtin(name);
    CHECK(f.graph.name == name);
    CHECK(!f.expected.empty());
    for (const auto& [key, e] : f.expected) {
      if (e.basis == Basis::Stated) CHECK_MESSAGE(!e.note.empty(), name << "." << key);
      CHECK_MESSAGE(decide(key, f.graph) == e.value, name << "." << key);
    }
  }
}

TEST_CASE("the two slopes disagree on the isolated point") {
  CHECK(builtin("ex41_half").expected.at(pred::square_isolated_point).value);
  CHECK(!builtin("ex41_third").expected.at(pred::square_isolated_point).value);
}

TEST_CASE("random graphs are deterministic and honor their profile") {
  for (std::uint64_t s = 0; s < 50; ++s)
    for (auto p : {Profile::XMonotonePath, Profile::SegmentSoup, Profile::WivpBiased}) {
      PLGraph a = random_graph(s, p), b = random_graph(s, p);
      CHECK(a == b);
      for (const auto& seg : a.segs) {
        CHECK(in_unit_square(seg.p()));
        CHECK(in_unit_square(seg.q()));
      }
      if (p == Profile::XMonotonePath) {
        CHECK(validate(a).domain_total);
        CHECK(values_all_connected(a).holds);
        CHECK(is_graph_connected(a).connected);
      }
      if (p == Profile::WivpBiased) CHECK(validate(a).domain_total);
    }
  CHECK(random_graph(1, Profile::SegmentSoup) != random_graph(2, Profile::SegmentSoup));
  CHECK(has_wivp(random_graph(1, Profile::XMonotonePath)).holds);
  for (auto p : {Profile::XMonotonePath, Profile::SegmentSoup, Profile::WivpBiased})
    CHECK(parse_profile(to_string(p)) == p);
  CHECK(!parse_profile("spiral"));
}

}  // TEST_SUITE
