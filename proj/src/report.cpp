#include "ivpkit/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace ivpkit {

namespace {

template <class Fn>
auto timed(AnalysisReport& r, const char* what, Fn fn) {
  auto t0 = std::chrono::steady_clock::now();
  auto out = fn();
  std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
  r.timings_ms.emplace_back(what, dt.count());
  return out;
}

std::string span_text(const Span& s) {
  return (s.lo_open ? "(" : "[") + to_string(s.lo) + ", " + to_string(s.hi) + (s.hi_open ? ")" : "]");
}

std::string pt_text(const Pt& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

}  // namespace

AnalysisReport analyze(const PLGraph& g, const LrSearchOptions& lr) {
  AnalysisReport r;
  r.name = g.name;
  r.validation = timed(r, "validate", [&] { return validate(g); });
  r.surjectivity = timed(r, "surjective", [&] { return is_surjective(g); });
  r.connectivity = timed(r, "graph_connected", [&] { return is_graph_connected(g); });
  if (!r.validation.domain_total) return r;
  r.values = timed(r, "values_connected", [&] { return values_all_connected(g); });
  r.wivp = timed(r, "wivp", [&] { return has_wivp(g); });
  r.ivp = timed(r, "ivp", [&] { return has_ivp(g); });
  r.lr_sets = timed(r, "lr_sets", [&] { return find_lr_sets(g, lr); });
  return r;
}

std::string format_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "graph " << (r.name.empty() ? "-" : r.name) << "\n";
  os << "domain_total " << r.validation.domain_total;
  for (const auto& s : r.validation.gaps) os << " gap " << span_text(s);
  os << "\nsurjective " << r.surjectivity.surjective;
  for (const auto& s : r.surjectivity.uncovered) os << " uncovered " << span_text(s);
  os << "\ngraph_connected " << r.connectivity.connected << " components " << r.connectivity.components.size()
     << "\n";
  if (!r.complete()) {
    os << "incomplete: graph is not domain-total\n";
    return os.str();
  }
  os << "values_connected " << r.values->holds;
  if (r.values->witness_x) os << " at x=" << to_string(*r.values->witness_x);
  os << "\nwivp " << r.wivp->holds;
  if (r.wivp->witness) {
    const auto& w = *r.wivp->witness;
    os << " strip [" << to_string(w.a) << ", " << to_string(w.b) << "] misses "
       << (w.missed_wall == Wall::Left ? "left" : "right") << " wall";
  }
  os << "\nivp " << r.ivp->holds;
  if (r.ivp->witness) {
    const auto& w = *r.ivp->witness;
    if (w.kind == IvpWitness::Kind::DisconnectedStrip)
      os << " disconnected strip [" << to_string(w.a) << ", " << to_string(w.b) << "]";
    else
      os << " point " << pt_text(w.point) << " not approached from the "
         << (w.side == Wall::Left ? "left" : "right");
  }
  os << "\nlr_sets " << r.lr_sets->size() << "\n";
  const std::size_t shown = std::min<std::size_t>(r.lr_sets->size(), 8);
  for (std::size_t k = 0; k < shown; ++k) {
    const auto& c = (*r.lr_sets)[k];
    os << "  frame [" << to_string(c.frame.dom.lo) << ", " << to_string(c.frame.dom.hi) << "] x ["
       << to_string(c.frame.cod.lo) << ", " << to_string(c.frame.cod.hi) << "] eps " << to_string(c.frame.eps)
       << " labels";
    for (Label l : c.labels.labels()) os << " " << to_string(l);
    os << "\n";
  }
  if (shown < r.lr_sets->size()) os << "  ... " << r.lr_sets->size() - shown << " more (see --json)\n";
  return os.str();
}

}  // namespace ivpkit
