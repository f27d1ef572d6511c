#pragma once

#include <cstddef>
#include <vector>

#include "ivpkit/strips.hpp"

namespace ivpkit {

/// Components of G ∩ V_[j/2^n, (j+1)/2^n] for every j, and chains picking one
/// component per strip with consecutive members intersecting.
struct ChainDecomposition {
  int depth = 0;
  std::vector<StripAnalysis> strips;
  std::vector<std::vector<std::size_t>> chains;  // chains[k][j] indexes strips[j].components
  bool overflow = false;  // enumeration bound hit; chains come from greedy covering
};

struct DecomposeOptions {
  std::size_t max_chains = 4096;
  bool strict = false;  // throw BudgetError instead of falling back to greedy covering
  int threads = 0;
};

/// Throws PreconditionError unless the graph is connected with the weak
/// intermediate value property.
ChainDecomposition dyadic_decompose(const PLGraph& g, int depth, const DecomposeOptions& opts = {});

/// Re-derives strip components from scratch and checks membership, wall contact,
/// consecutive intersection, connectedness and covering.
bool verify_decomposition(const PLGraph& g, const ChainDecomposition& d);

/// Segments of one chain (its components' pieces), sorted.
std::vector<Seg> chain_segments(const ChainDecomposition& d, std::size_t chain);

}  // namespace ivpkit
