#include "ivpkit/fixtures.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ivpkit {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Stated: return "stated";
    case Basis::Trivial: return "trivial";
    case Basis::Derived: return "derived";
  }
  return "?";
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::XMonotonePath: return "x_monotone_path";
    case Profile::SegmentSoup: return "segment_soup";
    case Profile::WivpBiased: return "wivp_biased";
  }
  return "?";
}

std::optional<Profile> parse_profile(const std::string& s) {
  for (Profile p : {Profile::XMonotonePath, Profile::SegmentSoup, Profile::WivpBiased})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

namespace {

Pt pt(Rat x, Rat y) { return {std::move(x), std::move(y)}; }

PLGraph make(const std::string& name, std::vector<Seg> segs) {
  std::sort(segs.begin(), segs.end());
  return {std::move(segs), name};
}

struct Table {
  std::map<std::string, Expectation> m;
  Table& set(const char* key, bool v, Basis b, std::string note = {}) {
    m[key] = {v, b, std::move(note)};
    return *this;
  }
};

}  // namespace

std::vector<std::string> builtin_names() {
  return {"ex41_half", "ex41_third", "ex42", "ex43", "ex44", "identity", "tent", "full_jump"};
}

Fixture builtin(const std::string& name) {
  using B = Basis;
  const Rat h(1, 2), q(1, 4), t(1, 3);
  Table e;
  PLGraph g;
  if (name == "ex41_half") {
    g = make(name, {Seg(pt(0, 0), pt(1, h)), Seg(pt(h, 0), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, true, B::Trivial, "upper branch alone covers [0,1]")
        .set(pred::graph_connected, true, B::Derived, "branches cross at (2/3,1/3)")
        .set(pred::wivp, false, B::Stated, "(1/2,0) is trapped in thin strips ending at x=1/2")
        .set(pred::ivp, false, B::Derived, "no weak property, so no full property")
        .set(pred::values_connected, false, B::Derived, "f(1) = {1/2, 1}")
        .set(pred::square_isolated_point, true, B::Stated, "f∘f has the isolated point (1,0)")
        .set(pred::mahavier_n2_connected, false, B::Derived, "the isolated point lifts to (0,1/2,1)");
  } else if (name == "ex41_third") {
    g = make(name, {Seg(pt(0, 0), pt(1, t)), Seg(pt(h, 0), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, true, B::Trivial, "upper branch alone covers [0,1]")
        .set(pred::graph_connected, true, B::Derived, "branches cross at (3/5,1/5)")
        .set(pred::wivp, false, B::Derived, "(1/2,0) is trapped exactly as in the slope-1/2 variant")
        .set(pred::ivp, false, B::Derived, "no weak property")
        .set(pred::values_connected, false, B::Derived, "f(1) = {1/3, 1}")
        .set(pred::square_isolated_point, false, B::Derived, "f∘f(1) = {1/9, 1/3, 1}; 0 is not a value at 1");
  } else if (name == "ex42") {
    g = make(name, {Seg(pt(0, 0), pt(1, Rat(2, 3))), Seg(pt(0, t), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, true, B::Derived, "[0,2/3] and [1/3,1] are covered")
        .set(pred::graph_connected, false, B::Stated, "two parallel branches")
        .set(pred::wivp, true, B::Stated, "each branch is a continuous selection")
        .set(pred::ivp, false, B::Derived, "every strip has two components")
        .set(pred::values_connected, false, B::Derived, "two values everywhere")
        .set(pred::mahavier_n2_connected, false, B::Derived, "G_2 maps onto the disconnected G_1");
  } else if (name == "ex43") {
    g = make(name, {Seg(pt(0, q), pt(1, q)), Seg(pt(0, q), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, false, B::Stated, "nothing below 1/4 is attained")
        .set(pred::graph_connected, true, B::Derived, "branches share (0,1/4)")
        .set(pred::wivp, true, B::Stated, "each branch is a continuous selection")
        .set(pred::ivp, false, B::Derived, "f(x) = {1/4, 1/4+3x/4} is disconnected for x > 0")
        .set(pred::values_connected, false, B::Derived, "two values for x > 0");
  } else if (name == "ex44") {
    g = make(name, {Seg(pt(0, 0), pt(q, q)), Seg(pt(0, 0), pt(1, 0)), Seg(pt(1, 0), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, true, B::Derived, "the vertical at x=1 covers [0,1]")
        .set(pred::graph_connected, true, B::Derived, "all pieces hang off (0,0) and (1,0)")
        .set(pred::wivp, false, B::Stated, "the spur over [0,1/4] cannot be continued to the right")
        .set(pred::ivp, false, B::Derived, "no weak property")
        .set(pred::values_connected, false, B::Derived, "f(x) = {0, x} on (0,1/4]")
        .set(pred::mahavier_n2_connected, true, B::Derived, "the inverse limit is connected")
        .set(pred::mahavier_n4_connected, true, B::Derived, "the inverse limit is connected");
  } else if (name == "identity") {
    g = make(name, {Seg(pt(0, 0), pt(1, 1))});
    for (const char* k : {pred::domain_total, pred::surjective, pred::graph_connected, pred::wivp, pred::ivp,
                          pred::values_connected, pred::mahavier_n2_connected, pred::mahavier_n4_connected})
      e.set(k, true, B::Trivial);
    e.set(pred::square_isolated_point, false, B::Trivial);
  } else if (name == "tent") {
    g = make(name, {Seg(pt(0, 0), pt(h, 1)), Seg(pt(h, 1), pt(1, 0))});
    for (const char* k : {pred::domain_total, pred::surjective, pred::graph_connected, pred::wivp, pred::ivp,
                          pred::values_connected})
      e.set(k, true, B::Trivial, "continuous surjection");
    e.set(pred::square_isolated_point, false, B::Trivial)
        .set(pred::mahavier_n2_connected, true, B::Derived, "G_n of a continuous map is an arc-like continuum")
        .set(pred::mahavier_n4_connected, true, B::Derived, "G_n of a continuous map is an arc-like continuum");
  } else if (name == "full_jump") {
    g = make(name, {Seg(pt(0, 0), pt(h, 0)), Seg(pt(h, 0), pt(h, 1)), Seg(pt(h, 1), pt(1, 1))});
    e.set(pred::domain_total, true, B::Trivial)
        .set(pred::surjective, true, B::Trivial, "f(1/2) = [0,1]")
        .set(pred::graph_connected, true, B::Trivial)
        .set(pred::wivp, true, B::Derived, "every strip component spans its strip")
        .set(pred::ivp, false, B::Derived, "(1/2,1/2) is not a limit of graph points from either side")
        .set(pred::values_connected, true, B::Trivial)
        .set(pred::square_isolated_point, false, B::Derived, "f∘f equals f")
        .set(pred::mahavier_n2_connected, true, B::Derived, "every G_n meets the diagonal-like core at x=1/2");
  } else {
    throw std::invalid_argument("unknown fixture: " + name);
  }
  return {std::move(g), std::move(e.m)};
}

namespace {

class Gen {
 public:
  Gen(std::uint64_t seed, Profile p) : rng_(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(p) + 1) {}
  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }
  bool chance(std::uint64_t one_in) { return pick(one_in) == 0; }
  Rat grid(long q) { return frac(static_cast<long>(pick(q + 1)), q); }

  void path(long q, std::vector<Seg>& out) {
    std::vector<Rat> xs{0};
    for (long k = 1; k < q; ++k)
      if (xs.size() < 4 && chance(2)) xs.push_back(frac(k, q));
    xs.push_back(1);
    Rat prev_y;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Rat y_in = grid(q);
      Rat y_out = chance(3) ? grid(q) : y_in;
      if (i > 0) out.emplace_back(Pt{xs[i - 1], prev_y}, Pt{xs[i], y_in});
      if (y_in != y_out) out.emplace_back(Pt{xs[i], y_in}, Pt{xs[i], y_out});
      prev_y = y_out;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

PLGraph random_graph(std::uint64_t seed, Profile profile) {
  Gen gen(seed, profile);
  const long q = gen.chance(3) ? 8 : 4;
  std::vector<Seg> segs;
  switch (profile) {
    case Profile::XMonotonePath:
      gen.path(q, segs);
      break;
    case Profile::SegmentSoup: {
      const auto n = 1 + gen.pick(4);
      for (std::uint64_t i = 0; i < n; ++i) {
        Pt a{gen.grid(q), gen.grid(q)};
        segs.push_back(gen.chance(6) ? Seg::point(a) : Seg(a, Pt{gen.grid(q), gen.grid(q)}));
      }
      break;
    }
    case Profile::WivpBiased: {
      const auto paths = 2 + gen.pick(2);
      for (std::uint64_t i = 0; i < paths; ++i) gen.path(q, segs);
      if (gen.chance(3)) {
        const Seg& s = segs[gen.pick(segs.size())];
        Pt a = gen.chance(2) ? s.p() : s.q();
        const Rat dx = frac(gen.chance(2) ? 1 : -1, q);
        Rat x = a.x + dx;
        if (x < 0 || x > 1) x = a.x - dx;
        segs.emplace_back(a, Pt{x, gen.grid(q)});
      }
      break;
    }
  }
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
  return {std::move(segs), to_string(profile) + "_" + std::to_string(seed)};
}

}  // namespace ivpkit
