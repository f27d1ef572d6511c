#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ivpkit/ccseq.hpp"
#include "ivpkit/decompose.hpp"
#include "ivpkit/fixtures.hpp"
#include "ivpkit/mahavier.hpp"
#include "ivpkit/report.hpp"

// JSON encodings. Rationals are "p/q" strings, points [x, y], segments [p, q],
// intervals [lo, hi]. Every top-level document carries "schema": 1. Decoders throw
// std::invalid_argument on malformed input.
namespace ivpkit::io {

using json = nlohmann::json;

inline constexpr int kSchema = 1;

json encode(const Rat& r);
json encode(const Pt& p);
json encode(const Seg& s);
json encode(const Interval& i);
json encode(const Span& s);
json encode(const Frame& f);
json encode(LabelSet s);
json encode(const PLGraph& g);

Rat decode_rat(const json& j);
Pt decode_pt(const json& j);
Seg decode_seg(const json& j);
Interval decode_interval(const json& j);
Frame decode_frame(const json& j);
LabelSet decode_labels(const json& j);

json encode(const WivpReport& r);
json encode(const IvpReport& r);
json encode(const GridOracleReport& r);

json encode(const SSetCertificate& c);
SSetCertificate decode_sset_certificate(const json& j);

json encode(const CCCertificate& c);
CCCertificate decode_cc_certificate(const json& j);
json encode(const CCReport& r);

json encode(const AnalysisReport& r);

/// Verdict, cut and per-cell data for G_n.
json mahavier_report(const CellComplex& cc, const ConnectivityVerdict& v);

json encode(const ChainDecomposition& d);

/// Expected-verdict table of a fixture.
json encode(const Fixture& f);

/// Writes NAME.graph and NAME.expected.json for every builtin fixture into dir.
/// Returns the paths written.
std::vector<std::string> export_fixtures(const std::string& dir);

}  // namespace ivpkit::io
