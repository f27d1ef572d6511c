#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivpkit/ssets.hpp"

namespace ivpkit {

struct CCStep {
  Label label = Label::L;
  Rat eps;
};

/// Window [m,n] with m+1 < n. The bonding map at index i is f_i, read from a
/// sequence as seq[i-1] with the last entry repeated beyond the list.
struct CCCertificate {
  int m = 0;
  int n = 0;
  std::vector<Interval> intervals;  // A_m .. A_n
  std::vector<CCStep> steps;        // claims for i = m+1 .. n; frame A_i x A_{i-1}
  std::vector<Rat> pivot;           // p_m .. p_n
  std::vector<Rat> left_extension;  // optional p_{m-1}, p_{m-2}, .., p_0
  std::optional<Rat> right_extension;  // optional p_{n+1}

  Frame frame(int i) const;
};

struct CCReport {
  bool valid = false;
  std::string failed;  // "window", "frames", "pivot membership", "extendability", "S-set claim", "clause 1".."clause 4"
  std::string detail;
  std::vector<LabelSet> truth;  // label sets of C_i for i = m+1..n, when computed
};

/// Bonding map f_i of a sequence.
const PLGraph& bonding_map(const std::vector<PLGraph>& seq, int i);

/// Throws HypothesisError unless every map in the sequence is domain-total,
/// surjective and has a connected graph.
void require_cc_hypotheses(const std::vector<PLGraph>& seq);

/// Labels of the component of G ∩ Z containing z for all small enough eps.
LabelSet limit_labels(const PLGraph& g, const Interval& dom, const Interval& cod, const Pt& z);

/// Checks window, frames, pivot membership, extendability, each claimed S-set at
/// its own eps, then clauses (1)-(4) on the limit label sets. Throws
/// HypothesisError when the sequence violates the hypotheses.
CCReport cc_validate(const std::vector<PLGraph>& seq, const CCCertificate& cert);

struct CCSearchOptions {
  int max_window = 3;
  int frame_depth = 3;
  Rat eps = Rat(1, 64);
  int threads = 0;
};

/// Bounded search. Windows by length then m; within a window, frames by the first
/// two intervals in grid order, then depth-first. Returns the first certificate
/// cc_validate accepts; nullopt is inconclusive.
std::optional<CCCertificate> cc_search(const std::vector<PLGraph>& seq, const CCSearchOptions& opts = {});

}  // namespace ivpkit
