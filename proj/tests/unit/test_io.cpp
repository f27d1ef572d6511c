#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ivpkit/json_io.hpp"
#include "ivpkit/svg.hpp"

using namespace ivpkit;
using io::json;

TEST_SUITE("io") {

TEST_CASE("rationals and shapes") {
  CHECK(io::encode(Rat(3, 8)) == json("3/8"));
  CHECK(io::decode_rat(json("-2/6")) == Rat(-1, 3));
  CHECK_THROWS_AS(io::decode_rat(json(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(io::decode_rat(json("1/0")), std::invalid_argument);
  Seg s({Rat(1, 2), 0}, {1, Rat(1, 3)});
  CHECK(io::decode_seg(io::encode(s)) == s);
  CHECK_THROWS_AS(io::decode_interval(json::array({"1", "0"})), std::invalid_argument);
  LabelSet l{Label::BR, Label::TL};
  CHECK(io::decode_labels(io::encode(l)) == l);
}

TEST_CASE("certificates round-trip") {
  CCCertificate c;
  c.m = 0;
  c.n = 2;
  c.intervals = {{0, Rat(1, 4)}, {Rat(3, 8), Rat(5, 8)}, {Rat(3, 4), 1}};
  c.steps = {{Label::R, Rat(1, 16)}, {Label::B, Rat(1, 16)}};
  c.pivot = {0, Rat(1, 2), 1};
  c.right_extension = 1;
  json j = io::encode(c);
  CHECK(j["schema"] == 1);
  auto back = io::decode_cc_certificate(json::parse(j.dump()));
  CHECK(io::encode(back) == j);
  json broken = j;
  broken.erase("pivot");
  CHECK_THROWS_AS(io::decode_cc_certificate(broken), std::invalid_argument);
  broken = j;
  broken["schema"] = 2;
  CHECK_THROWS_AS(io::decode_cc_certificate(broken), std::invalid_argument);

  for (const auto& cert : classify_sset(builtin("ex41_half").graph, {{Rat(3, 8), Rat(5, 8)}, {0, Rat(1, 4)}, Rat(1, 16)})) {
    json sj = io::encode(cert);
    auto sb = io::decode_sset_certificate(json::parse(sj.dump()));
    CHECK(io::encode(sb) == sj);
    CHECK(recheck_sset(builtin("ex41_half").graph, sb));
  }
}

TEST_CASE("analysis reports") {
  auto r = analyze(builtin("ex44").graph);
  json j = io::encode(r);
  CHECK(j["schema"] == 1);
  CHECK(j["complete"] == true);
  CHECK(j["wivp"]["holds"] == false);
  Interval strip = io::decode_interval(j["wivp"]["witness"]["strip"]);
  CHECK(strip.lo >= Rat(1, 4));
  CHECK(strip.hi <= Rat(1, 2));
  CHECK(j["values_connected"]["witness_x"] == "1/8");
  CHECK(!j["lr_sets"].empty());
  // Every report field survives a text round trip.
  CHECK(json::parse(j.dump()) == j);

  auto partial = analyze(parse_graph("seg 0 0 1/2 1/2"));
  json p = io::encode(partial);
  CHECK(p["complete"] == false);
  CHECK(p["wivp"].is_null());
  CHECK(p["domain_total"]["gaps"].size() == 1);
  CHECK(format_text(partial).find("incomplete") != std::string::npos);

  auto id = io::encode(analyze(builtin("identity").graph));
  for (const char* k : {"surjective", "graph_connected", "values_connected", "wivp", "ivp"}) CHECK(id[k]["holds"] == true);
  CHECK(id["lr_sets"].empty());
}

TEST_CASE("mahavier and decomposition reports") {
  auto cc = build({builtin("ex41_half").graph}, 2);
  json m = io::mahavier_report(cc, is_connected(cc));
  CHECK(m["connected"] == false);
  CHECK(m["feasible_cells"] == cc.cells.size());
  CHECK(m["cut"]["witness_points"][1] == json::array({"0", "1/2", "1"}));
  CHECK(json::parse(m.dump()) == m);

  json d = io::encode(dyadic_decompose(builtin("ex43").graph, 1));
  CHECK(d["chains"].size() == 2);
  CHECK(d["strips"].size() == 2);
}

TEST_CASE("fixture export") {
  auto dir = std::filesystem::temp_directory_path() / "ivpkit_fixture_export";
  std::filesystem::remove_all(dir);
  auto files = io::export_fixtures(dir.string());
  CHECK(files.size() == 2 * builtin_names().size());
  for (const auto& name : builtin_names()) {
    auto g = read_graph_file((dir / (name + ".graph")).string());
    REQUIRE(g.size() == 1);
    CHECK(g[0] == parse_graph(serialize(builtin(name).graph)));
    std::ifstream in(dir / (name + ".expected.json"));
    json j = json::parse(in);
    CHECK(j["name"] == name);
    for (const auto& [k, e] : builtin(name).expected) CHECK(j["expected"][k]["value"] == e.value);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("svg output") {
  PLGraph g = builtin("ex42").graph;
  std::string a = render_svg(g), b = render_svg(g);
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t p = a.find("<line"); p != std::string::npos; p = a.find("<line", p + 1)) ++lines;
  CHECK(lines == 2);

  RenderOptions opts;
  opts.strip = Interval{Rat(1, 4), Rat(1, 2)};
  std::string s = render_svg(builtin("identity").graph, opts);
  CHECK(s.find("x=\"124.00\" y=\"24.00\" width=\"100.00\" height=\"400.00\"") != std::string::npos);

  opts = {};
  opts.frame = Frame{{Rat(3, 8), Rat(5, 8)}, {0, Rat(1, 4)}, Rat(1, 16)};
  std::string f = render_svg(power(builtin("ex41_half").graph, 2), opts);
  CHECK(f.find("<circle") != std::string::npos);
  CHECK(f.find(">R</text>") != std::string::npos);
  CHECK(f == render_svg(power(builtin("ex41_half").graph, 2), opts));
}

}  // TEST_SUITE
