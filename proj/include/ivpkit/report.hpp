#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivpkit/plgraph.hpp"
#include "ivpkit/ssets.hpp"
#include "ivpkit/strips.hpp"

namespace ivpkit {

/// Every decider run on one graph. The deciders that need a domain-total graph
/// are left empty when the graph is not total.
struct AnalysisReport {
  std::string name;
  ValidationReport validation;
  SurjectivityReport surjectivity;
  GraphConnectivity connectivity;
  std::optional<ValuesConnectivity> values;
  std::optional<WivpReport> wivp;
  std::optional<IvpReport> ivp;
  std::optional<std::vector<SSetCertificate>> lr_sets;
  std::vector<std::pair<std::string, double>> timings_ms;

  bool complete() const { return validation.domain_total; }
};

AnalysisReport analyze(const PLGraph& g, const LrSearchOptions& lr = {});

/// Plain-text rendering, one verdict per line.
std::string format_text(const AnalysisReport& r);

}  // namespace ivpkit
