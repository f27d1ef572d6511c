#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ivpkit/plgraph.hpp"

namespace ivpkit {

/// A canonical graph with its pairwise contacts precomputed. In canonical form two
/// distinct segments meet in at most one point, a shared endpoint.
class Arrangement {
 public:
  struct Contact {
    std::size_t i;
    std::size_t j;
    Pt at;
  };

  explicit Arrangement(const PLGraph& g);

  const PLGraph& graph() const { return graph_; }
  const std::vector<Seg>& segs() const { return graph_.segs; }
  const std::vector<Contact>& contacts() const { return contacts_; }
  const std::vector<Rat>& critical_xs() const { return critical_xs_; }
  /// Critical x-values plus the midpoint of each gap between consecutive ones.
  const std::vector<Rat>& probe_xs() const { return probe_xs_; }

 private:
  PLGraph graph_;
  std::vector<Contact> contacts_;
  std::vector<Rat> critical_xs_;
  std::vector<Rat> probe_xs_;
};

enum class Wall { Left, Right };

struct StripComponent {
  std::vector<std::size_t> seg_ids;  // indices into the canonical graph
  std::vector<Seg> pieces;           // the same segments clipped to the strip
  bool touches_left = false;
  bool touches_right = false;
  Interval x_extent;
};

/// Components of G ∩ ([a,b] x [0,1]), ordered by their smallest segment index.
struct StripAnalysis {
  Rat a;
  Rat b;
  std::vector<StripComponent> components;
};

StripAnalysis strip_components(const Arrangement& arr, const Rat& a, const Rat& b);
StripAnalysis strip_components(const PLGraph& g, const Rat& a, const Rat& b);

struct WivpWitness {
  Rat a;
  Rat b;
  std::size_t component_index = 0;  // into strip_components(g, a, b)
  Wall missed_wall = Wall::Left;
  std::vector<Seg> component;
};

struct WivpReport {
  bool holds = true;
  std::optional<WivpWitness> witness;
  /// The strip criterion characterizes the property when the graph is connected;
  /// for disconnected graphs the criterion is still evaluated and this flag is false.
  bool graph_connected = false;
  std::size_t strips_checked = 0;
};

/// Strip criterion over all strips with endpoints among Arrangement::probe_xs().
/// A failure is reported on the narrowest failing probe strip, with the missed
/// wall then pulled halfway toward the trapped component. Throws
/// PreconditionError when the graph is not domain-total.
WivpReport has_wivp(const PLGraph& g);

struct IvpWitness {
  enum class Kind { DisconnectedStrip, UnapproachablePoint };
  Kind kind = Kind::DisconnectedStrip;
  Rat a;  // strip, for DisconnectedStrip
  Rat b;
  Pt point;  // for UnapproachablePoint
  Wall side = Wall::Left;
};

struct IvpReport {
  bool holds = true;
  std::optional<IvpWitness> witness;
  std::size_t strips_checked = 0;
};

/// Every probe strip has one component, and every graph point is a limit of graph
/// points strictly to its right (if x < 1) and to its left (if x > 0).
/// Throws PreconditionError when the graph is not domain-total.
IvpReport has_ivp(const PLGraph& g);

struct GridOracleWitness {
  int first_column = 0;
  int last_column = 0;
  Wall missed_wall = Wall::Left;
};

struct GridOracleReport {
  bool failed = false;  // false = plausible at this resolution
  int resolution = 0;
  std::optional<GridOracleWitness> witness;
};

/// Rasterizes the graph on an N x N pixel grid (a pixel is set iff the graph meets
/// the closed pixel square) and looks for an 8-connected component of some column
/// range that misses its first or last column. Requires N >= 8.
GridOracleReport wivp_grid_oracle(const PLGraph& g, int resolution);

/// Pixel rows set in each column, for rendering and tests.
std::vector<std::vector<int>> rasterize(const PLGraph& g, int resolution);

}  // namespace ivpkit
