#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ivpkit/plgraph.hpp"

namespace ivpkit {

/// Where an expected verdict comes from: stated outright for the example, immediate
/// from the definitions, or worked out by hand.
enum class Basis { Stated, Trivial, Derived };

std::string to_string(Basis b);

struct Expectation {
  bool value = false;
  Basis basis = Basis::Derived;
  std::string note;
};

struct Fixture {
  PLGraph graph;
  std::map<std::string, Expectation> expected;  // predicate name -> verdict
};

/// Predicate keys used in Fixture::expected.
namespace pred {
inline constexpr const char* domain_total = "domain_total";
inline constexpr const char* surjective = "surjective";
inline constexpr const char* graph_connected = "graph_connected";
inline constexpr const char* wivp = "wivp";
inline constexpr const char* ivp = "ivp";
inline constexpr const char* values_connected = "values_connected";
inline constexpr const char* square_isolated_point = "square_isolated_point";
inline constexpr const char* mahavier_n2_connected = "mahavier_n2_connected";
inline constexpr const char* mahavier_n4_connected = "mahavier_n4_connected";
}  // namespace pred

std::vector<std::string> builtin_names();
/// Throws std::invalid_argument for an unknown name.
Fixture builtin(const std::string& name);

enum class Profile { XMonotonePath, SegmentSoup, WivpBiased };

std::string to_string(Profile p);
std::optional<Profile> parse_profile(const std::string& s);

/// Deterministic in (seed, profile). Coordinates lie on a 1/4 or 1/8 grid.
/// XMonotonePath: a left-to-right path whose only non-slanted pieces are vertical
/// jumps, so every f(x) is an interval and the graph is connected.
/// SegmentSoup: one to four arbitrary segments or points; may be invalid.
/// WivpBiased: a union of two or three paths, sometimes with a short dangling branch.
PLGraph random_graph(std::uint64_t seed, Profile profile);

}  // namespace ivpkit
