#include <doctest.h>

#include "ivpkit/errors.hpp"
#include "ivpkit/fixtures.hpp"
#include "ivpkit/ssets.hpp"
#include "../testkit.hpp"

using namespace ivpkit;

namespace {

Pt P(const char* x, const char* y) { return {*parse_rat(x), *parse_rat(y)}; }

Frame F(const char* a, const char* b, const char* c, const char* d, const char* e) {
  return {{*parse_rat(a), *parse_rat(b)}, {*parse_rat(c), *parse_rat(d)}, *parse_rat(e)};
}

bool cprime_has(const SSetCertificate& c, const Pt& p) {
  return std::any_of(c.component_cprime.begin(), c.component_cprime.end(),
                     [&](const Piece& q) { return testkit::on_seg(p, q.seg); });
}

// Sample points of C' away from its open ends and check every claimed region.
void check_claims(const SSetCertificate& c) {
  for (const auto& piece : c.component_cprime)
    for (int k = 1; k < 16; ++k) {
      Pt p = testkit::point_on(piece.seg, k, 16);
      for (Label l : c.labels.labels()) REQUIRE(testkit::in_region(l, c.frame, p));
    }
}

}  // namespace

TEST_SUITE("ssets") {

TEST_CASE("frames and admissible labels") {
  CHECK(frame_valid(F("1/4", "1/2", "1/4", "1/2", "1/8")));
  CHECK(!frame_valid(F("0", "1", "1/4", "1/2", "1/8")));
  CHECK(!frame_valid(F("1/4", "1/2", "1/4", "1/2", "0")));
  CHECK(frame_valid(F("1/4", "1/4", "1/4", "1/4", "1/8")));
  LabelSet all = admissible_labels(F("1/4", "1/2", "1/4", "1/2", "1/8"));
  for (Label l : kAllLabels) CHECK(all.has(l));
  LabelSet edge = admissible_labels(F("0", "1/2", "1/4", "1", "1/8"));
  CHECK(!edge.has(Label::L));
  CHECK(!edge.has(Label::R));
  CHECK(!edge.has(Label::B));
  CHECK(!edge.has(Label::T));
  CHECK(edge.has(Label::TL));
  for (Label l : kAllLabels) CHECK(parse_label(to_string(l)) == l);
  CHECK(!parse_label("X"));
}

TEST_CASE("region table matches the definitions") {
  testkit::Rng rng(51);
  for (int f = 0; f < 40; ++f) {
    Rat a1 = rng.grid(8), b1 = rng.grid(8), a0 = rng.grid(8), b0 = rng.grid(8);
    if (b1 < a1) std::swap(a1, b1);
    if (b0 < a0) std::swap(a0, b0);
    Frame fr{{a1, b1}, {a0, b0}, Rat(1, 16)};
    SSetRegions reg(fr);
    for (int k = 0; k < 1000; ++k) {
      Pt p = rng.grid_pt(rng.coin(1, 2) ? 8 : 64);
      for (Label l : kAllLabels) REQUIRE(reg.region(l).contains(p) == testkit::in_region(l, fr, p));
      REQUIRE(reg.tl.contains(p) == (reg.t.contains(p) || reg.l.contains(p)));
      REQUIRE(reg.tr.contains(p) == (reg.t.contains(p) || reg.r.contains(p)));
      REQUIRE(reg.bl.contains(p) == (reg.b.contains(p) || reg.l.contains(p)));
      REQUIRE(reg.br.contains(p) == (reg.b.contains(p) || reg.r.contains(p)));
      REQUIRE(reg.z.contains(p) == testkit::in_z(fr, p));
    }
  }
}

TEST_CASE("classify: identity") {
  Frame f = F("1/4", "1/2", "1/4", "1/2", "1/8");
  auto certs = classify_sset(parse_graph("seg 0 0 1 1"), f);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].labels == LabelSet{Label::BR, Label::TL});
  check_claims(certs[0]);
  // Points of the diagonal in Z(eps) just outside the claimed-against regions.
  CHECK(!testkit::in_region(Label::BL, f, P("9/16", "9/16")));
  CHECK(!testkit::in_region(Label::TR, f, P("3/16", "3/16")));
  CHECK(recheck_sset(parse_graph("seg 0 0 1 1"), certs[0]));
}

TEST_CASE("classify: the R-set of the half-slope example") {
  PLGraph g = builtin("ex41_half").graph;
  Frame f = F("3/8", "5/8", "0", "1/4", "1/16");
  auto certs = classify_sset(g, f);
  const SSetCertificate* hit = nullptr;
  for (const auto& c : certs)
    if (cprime_has(c, P("1/2", "0"))) hit = &c;
  REQUIRE(hit);
  CHECK(hit->labels.has(Label::R));
  check_claims(*hit);
  CHECK(recheck_sset(g, *hit));
  // The lower branch y = x/2 also crosses Z(eps) and is its own component.
  bool lower = std::any_of(certs.begin(), certs.end(), [&](const SSetCertificate& c) {
    return cprime_has(c, P("1/2", "1/4")) && !cprime_has(c, P("1/2", "0"));
  });
  CHECK(lower);
}

TEST_CASE("classify: a horizontal run exiting both sides carries no label") {
  CHECK(classify_sset(builtin("ex43").graph, F("1/4", "1/2", "1/4", "1/4", "1/32")).empty());
}

TEST_CASE("classify rejects invalid frames") {
  CHECK_THROWS_AS(classify_sset(parse_graph("seg 0 0 1 1"), F("0", "1", "1/4", "1/2", "1/8")), PreconditionError);
}

TEST_CASE("classify certificates re-check on random frames") {
  testkit::Rng rng(52);
  std::vector<PLGraph> graphs;
  for (const auto& n : builtin_names()) graphs.push_back(builtin(n).graph);
  int checked = 0;
  for (const auto& g : graphs)
    for (int k = 0; k < 60; ++k) {
      Rat a1 = rng.grid(8), b1 = rng.grid(8), a0 = rng.grid(8), b0 = rng.grid(8);
      if (b1 < a1) std::swap(a1, b1);
      if (b0 < a0) std::swap(a0, b0);
      Frame f{{a1, b1}, {a0, b0}, frac(1, 8 << rng.uniform(0, 2))};
      if (!frame_valid(f)) continue;
      for (const auto& c : classify_sset(g, f)) {
        CHECK(!c.labels.empty());
        CHECK((c.labels & admissible_labels(f)) == c.labels);
        check_claims(c);
        REQUIRE(recheck_sset(g, c));
        ++checked;
      }
    }
  CHECK(checked > 100);
}

TEST_CASE("tampered certificates fail the re-check") {
  PLGraph g = parse_graph("seg 0 0 1 1");
  auto c = classify_sset(g, F("1/4", "1/2", "1/4", "1/2", "1/8"))[0];
  auto bad = c;
  bad.labels.insert(Label::BL);
  CHECK(!recheck_sset(g, bad));
  bad = c;
  bad.frame.eps = Rat(1, 4);
  CHECK(!recheck_sset(g, bad));
  bad = c;
  bad.component_c.pop_back();
  CHECK(!recheck_sset(g, bad));
}

TEST_CASE("refine_dyadic") {
  CHECK(refine_dyadic({0, 1}, 2) == std::vector<Rat>{0, Rat(1, 4), Rat(1, 2), Rat(3, 4), 1});
  CHECK(refine_dyadic({0, Rat(1, 2), 1}, 0) == std::vector<Rat>{0, Rat(1, 2), 1});
  CHECK(refine_dyadic({0, 1}, 3).size() == 9);
}

TEST_CASE("find_lr_sets examples") {
  auto lr = find_lr_sets(builtin("ex41_half").graph);
  CHECK(!lr.empty());
  CHECK(find_lr_sets(parse_graph("seg 0 0 1 1")).empty());
  CHECK(find_lr_sets(builtin("ex43").graph).empty());
}

TEST_CASE("find_lr_sets output is sound and label-monotone") {
  for (const char* name : {"ex41_half", "ex44"}) {
    PLGraph g = builtin(name).graph;
    auto lr = find_lr_sets(g);
    REQUIRE(!lr.empty());
    for (std::size_t k = 0; k < lr.size(); k += 1 + lr.size() / 200) {
      const auto& c = lr[k];
      CHECK((c.labels.has(Label::L) || c.labels.has(Label::R)));
      // The unrestricted classification of the same component carries the corner unions too.
      bool matched = false;
      for (const auto& full : classify_sset(g, c.frame)) {
        if (full.component_c != c.component_c) continue;
        matched = true;
        if (c.labels.has(Label::L)) CHECK((full.labels.has(Label::BL) && full.labels.has(Label::TL)));
        if (c.labels.has(Label::R)) CHECK((full.labels.has(Label::BR) && full.labels.has(Label::TR)));
      }
      CHECK(matched);
      check_claims(c);
      REQUIRE(recheck_sset(g, c));
    }
  }
}

TEST_CASE("connected graphs with the weak property have no L- or R-sets") {
  for (const auto& n : builtin_names()) {
    PLGraph g = builtin(n).graph;
    auto w = has_wivp(g);
    if (w.holds && w.graph_connected) CHECK_MESSAGE(find_lr_sets(g).empty(), n);
  }
  int used = 0;
  for (std::uint64_t s = 0; used < 20; ++s) {
    PLGraph g = random_graph(s, Profile::WivpBiased);
    if (canonicalize(g).segs.size() > 10) continue;
    auto w = has_wivp(g);
    if (!w.holds || !w.graph_connected) continue;
    ++used;
    CHECK(find_lr_sets(g).empty());
  }
}

}  // TEST_SUITE
