#include "ivpkit/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ivpkit::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

const char* wall_name(Wall w) { return w == Wall::Left ? "left" : "right"; }

json encode_list(const std::vector<Seg>& segs) {
  json out = json::array();
  for (const auto& s : segs) out.push_back(encode(s));
  return out;
}

json encode_rats(const std::vector<Rat>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(encode(r));
  return out;
}

std::vector<Rat> decode_rats(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  std::vector<Rat> out;
  for (const auto& e : j) out.push_back(decode_rat(e));
  return out;
}

template <class Fn>
auto guarded(Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace

json encode(const Rat& r) { return to_string(r); }
json encode(const Pt& p) { return json::array({encode(p.x), encode(p.y)}); }
json encode(const Seg& s) { return json::array({encode(s.p()), encode(s.q())}); }
json encode(const Interval& i) { return json::array({encode(i.lo), encode(i.hi)}); }

json encode(const Span& s) {
  return {{"lo", encode(s.lo)}, {"hi", encode(s.hi)}, {"lo_open", s.lo_open}, {"hi_open", s.hi_open}};
}

json encode(const Frame& f) { return {{"dom", encode(f.dom)}, {"cod", encode(f.cod)}, {"eps", encode(f.eps)}}; }

json encode(LabelSet s) {
  json out = json::array();
  for (Label l : s.labels()) out.push_back(to_string(l));
  return out;
}

json encode(const PLGraph& g) {
  std::vector<Seg> segs = g.segs;
  std::sort(segs.begin(), segs.end());
  return {{"name", g.name}, {"segments", encode_list(segs)}};
}

Rat decode_rat(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  auto r = parse_rat(j.get<std::string>());
  if (!r) throw std::invalid_argument("bad rational '" + j.get<std::string>() + "'");
  return *r;
}

Pt decode_pt(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
  return {decode_rat(j[0]), decode_rat(j[1])};
}

Seg decode_seg(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("segment must be [p, q]");
  return Seg(decode_pt(j[0]), decode_pt(j[1]));
}

Interval decode_interval(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
  Interval out{decode_rat(j[0]), decode_rat(j[1])};
  if (out.hi < out.lo) throw std::invalid_argument("interval with hi < lo");
  return out;
}

Frame decode_frame(const json& j) {
  return {decode_interval(field(j, "dom")), decode_interval(field(j, "cod")), decode_rat(field(j, "eps"))};
}

LabelSet decode_labels(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("labels must be an array");
  LabelSet out;
  for (const auto& e : j) {
    auto l = e.is_string() ? parse_label(e.get<std::string>()) : std::nullopt;
    if (!l) throw std::invalid_argument("unknown label " + e.dump());
    out.insert(*l);
  }
  return out;
}

json encode(const WivpReport& r) {
  json out{{"holds", r.holds}, {"graph_connected", r.graph_connected}, {"strips_checked", r.strips_checked}};
  if (r.witness) {
    const auto& w = *r.witness;
    out["witness"] = {{"strip", encode(Interval{w.a, w.b})},
                      {"component_index", w.component_index},
                      {"missed_wall", wall_name(w.missed_wall)},
                      {"component", encode_list(w.component)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json encode(const IvpReport& r) {
  json out{{"holds", r.holds}, {"strips_checked", r.strips_checked}, {"witness", nullptr}};
  if (r.witness) {
    const auto& w = *r.witness;
    if (w.kind == IvpWitness::Kind::DisconnectedStrip)
      out["witness"] = {{"kind", "disconnected_strip"}, {"strip", encode(Interval{w.a, w.b})}};
    else
      out["witness"] = {{"kind", "unapproachable_point"}, {"point", encode(w.point)}, {"side", wall_name(w.side)}};
  }
  return out;
}

json encode(const GridOracleReport& r) {
  json out{{"schema", kSchema}, {"resolution", r.resolution}, {"failed", r.failed}, {"witness", nullptr}};
  if (r.witness)
    out["witness"] = {{"first_column", r.witness->first_column},
                      {"last_column", r.witness->last_column},
                      {"missed_wall", wall_name(r.witness->missed_wall)}};
  return out;
}

json encode(const SSetCertificate& c) {
  json pieces = json::array();
  for (const auto& p : c.component_cprime)
    pieces.push_back({{"seg_id", p.seg_id}, {"seg", encode(p.seg)}, {"p_open", p.p_open}, {"q_open", p.q_open}});
  return {{"frame", encode(c.frame)},
          {"labels", encode(c.labels)},
          {"component_cprime", pieces},
          {"component_c", encode_list(c.component_c)}};
}

SSetCertificate decode_sset_certificate(const json& j) {
  return guarded([&] {
    SSetCertificate c;
    c.frame = decode_frame(field(j, "frame"));
    c.labels = decode_labels(field(j, "labels"));
    for (const auto& p : field(j, "component_cprime"))
      c.component_cprime.push_back({field(p, "seg_id").get<std::size_t>(), decode_seg(field(p, "seg")),
                                    field(p, "p_open").get<bool>(), field(p, "q_open").get<bool>()});
    for (const auto& s : field(j, "component_c")) c.component_c.push_back(decode_seg(s));
    return c;
  });
}

json encode(const CCCertificate& c) {
  json intervals = json::array();
  for (const auto& a : c.intervals) intervals.push_back(encode(a));
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"label", to_string(s.label)}, {"eps", encode(s.eps)}});
  json out{{"schema", kSchema},
           {"kind", "cc_certificate"},
           {"m", c.m},
           {"n", c.n},
           {"intervals", intervals},
           {"steps", steps},
           {"pivot", encode_rats(c.pivot)},
           {"left_extension", encode_rats(c.left_extension)},
           {"right_extension", nullptr}};
  if (c.right_extension) out["right_extension"] = encode(*c.right_extension);
  return out;
}

CCCertificate decode_cc_certificate(const json& j) {
  return guarded([&] {
    if (field(j, "schema").get<int>() != kSchema) throw std::invalid_argument("unsupported schema version");
    CCCertificate c;
    c.m = field(j, "m").get<int>();
    c.n = field(j, "n").get<int>();
    for (const auto& a : field(j, "intervals")) c.intervals.push_back(decode_interval(a));
    for (const auto& s : field(j, "steps")) {
      auto l = parse_label(field(s, "label").get<std::string>());
      if (!l) throw std::invalid_argument("unknown label in step");
      c.steps.push_back({*l, decode_rat(field(s, "eps"))});
    }
    c.pivot = decode_rats(field(j, "pivot"));
    if (j.contains("left_extension")) c.left_extension = decode_rats(j.at("left_extension"));
    if (j.contains("right_extension") && !j.at("right_extension").is_null())
      c.right_extension = decode_rat(j.at("right_extension"));
    return c;
  });
}

json encode(const CCReport& r) {
  json truth = json::array();
  for (const auto& t : r.truth) truth.push_back(encode(t));
  return {{"schema", kSchema}, {"valid", r.valid}, {"failed", r.failed}, {"detail", r.detail}, {"truth", truth}};
}

json encode(const AnalysisReport& r) {
  json gaps = json::array(), uncovered = json::array(), comps = json::array();
  for (const auto& s : r.validation.gaps) gaps.push_back(encode(s));
  for (const auto& s : r.surjectivity.uncovered) uncovered.push_back(encode(s));
  for (const auto& c : r.connectivity.components) comps.push_back(encode_list(c));
  json out{{"schema", kSchema},
           {"kind", "analysis"},
           {"graph", r.name},
           {"complete", r.complete()},
           {"domain_total", {{"holds", r.validation.domain_total}, {"gaps", gaps}}},
           {"surjective", {{"holds", r.surjectivity.surjective}, {"uncovered", uncovered}}},
           {"graph_connected", {{"holds", r.connectivity.connected}, {"components", comps}}},
           {"values_connected", nullptr},
           {"wivp", nullptr},
           {"ivp", nullptr},
           {"lr_sets", nullptr}};
  if (r.values) {
    out["values_connected"] = {{"holds", r.values->holds}, {"witness_x", nullptr}};
    if (r.values->witness_x) out["values_connected"]["witness_x"] = encode(*r.values->witness_x);
  }
  if (r.wivp) out["wivp"] = encode(*r.wivp);
  if (r.ivp) out["ivp"] = encode(*r.ivp);
  if (r.lr_sets) {
    out["lr_sets"] = json::array();
    for (const auto& c : *r.lr_sets) out["lr_sets"].push_back(encode(c));
  }
  json timings = json::object();
  for (const auto& [k, v] : r.timings_ms) timings[k] = v;
  out["timings_ms"] = timings;
  return out;
}

json mahavier_report(const CellComplex& cc, const ConnectivityVerdict& v) {
  std::vector<std::vector<Seg>> segs;
  for (const auto& g : cc.graphs) {
    auto s = g.segs;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    segs.push_back(std::move(s));
  }
  json cells = json::array();
  for (std::size_t k = 0; k < cc.cells.size(); ++k) {
    const auto& c = cc.cells[k];
    json tuple = json::array();
    for (std::size_t i = 0; i < c.tuple.size(); ++i) tuple.push_back(encode(segs[i][c.tuple[i]]));
    json cell{{"segments", tuple}};
    if (!v.part.empty()) cell["side"] = v.part[k];
    cells.push_back(cell);
  }
  json edges = json::array();
  for (const auto& [a, b] : cc.edges) edges.push_back({a, b});
  json out{{"schema", kSchema},
           {"kind", "mahavier"},
           {"n", cc.n},
           {"tuples_total", cc.tuples_total},
           {"feasible_cells", cc.cells.size()},
           {"bonding_surjective", v.bonding_surjective},
           {"connected", v.connected},
           {"components", v.components},
           {"cells", cells},
           {"edges", edges},
           {"cut", nullptr}};
  if (!v.connected) {
    json pts = json::array();
    for (const auto& p : v.witness_points) pts.push_back(encode_rats(p));
    out["cut"] = {{"witness_points", pts}};
  }
  return out;
}

json encode(const ChainDecomposition& d) {
  json strips = json::array();
  for (const auto& s : d.strips) {
    json comps = json::array();
    for (const auto& c : s.components)
      comps.push_back({{"pieces", encode_list(c.pieces)},
                       {"touches_left", c.touches_left},
                       {"touches_right", c.touches_right}});
    strips.push_back({{"strip", encode(Interval{s.a, s.b})}, {"components", comps}});
  }
  return {{"schema", kSchema},
          {"kind", "decomposition"},
          {"depth", d.depth},
          {"overflow", d.overflow},
          {"strips", strips},
          {"chains", d.chains}};
}

json encode(const Fixture& f) {
  json expected = json::object();
  for (const auto& [k, e] : f.expected)
    expected[k] = {{"value", e.value}, {"basis", to_string(e.basis)}, {"note", e.note}};
  return {{"schema", kSchema}, {"kind", "fixture"}, {"name", f.graph.name}, {"expected", expected}};
}

std::vector<std::string> export_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << text;
    written.push_back(p.string());
  };
  for (const auto& name : builtin_names()) {
    Fixture f = builtin(name);
    put(fs::path(dir) / (name + ".graph"), serialize(f.graph));
    put(fs::path(dir) / (name + ".expected.json"), encode(f).dump(2) + "\n");
  }
  return written;
}

}  // namespace ivpkit::io
