#pragma once

#include <compare>
#include <optional>
#include <variant>

#include "ivpkit/rational.hpp"

namespace ivpkit {

/// Point of the unit square. The [0,1] bounds are enforced where points enter the
/// system (parsing, fixtures); arithmetic helpers do not re-check them.
struct Pt {
  Rat x;
  Rat y;

  friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
  friend std::strong_ordering operator<=>(const Pt& a, const Pt& b) {
    if (int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.y, b.y); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline bool in_unit_square(const Pt& p) { return p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1; }

/// Closed segment with p <= q lexicographically. p == q is an isolated point.
class Seg {
 public:
  Seg() = default;
  Seg(Pt a, Pt b) : p_(std::move(a)), q_(std::move(b)) {
    if (q_ < p_) std::swap(p_, q_);
  }
  static Seg point(Pt a) { return Seg(a, a); }

  const Pt& p() const { return p_; }
  const Pt& q() const { return q_; }
  bool degenerate() const { return p_ == q_; }
  bool vertical() const { return p_.x == q_.x; }

  friend bool operator==(const Seg&, const Seg&) = default;
  friend std::strong_ordering operator<=>(const Seg& a, const Seg& b) {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    return a.q_ <=> b.q_;
  }

 private:
  Pt p_;
  Pt q_;
};

/// Closed interval [lo, hi]; lo == hi allowed.
struct Interval {
  Rat lo;
  Rat hi;

  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Interval with per-end openness; used for uncovered ranges such as (1/2, 1].
struct Span {
  Rat lo;
  Rat hi;
  bool lo_open = false;
  bool hi_open = false;

  friend bool operator==(const Span&, const Span&) = default;
};

/// Sign of the cross product (b - a) x (c - a).
int orient(const Pt& a, const Pt& b, const Pt& c);

/// True iff x lies on the closed segment s.
bool on_segment(const Pt& x, const Seg& s);

/// y-coordinate of the non-vertical segment s at abscissa x (x need not lie in range).
Rat y_at(const Seg& s, const Rat& x);

/// Point of s at parameter t in [0,1], measured from p to q.
Pt lerp(const Seg& s, const Rat& t);

using SegIntersection = std::variant<std::monostate, Pt, Seg>;

inline bool empty(const SegIntersection& r) { return std::holds_alternative<std::monostate>(r); }

/// Exact s ∩ t: nothing, one point, or a collinear overlap (always nondegenerate).
SegIntersection seg_intersect(const Seg& s, const Seg& t);

/// s ∩ ([a,b] x [0,1]). Requires a <= b.
std::optional<Seg> clip_to_strip(const Seg& s, const Rat& a, const Rat& b);

/// s ∩ ([x0,x1] x [y0,y1]), closed box.
std::optional<Seg> clip_to_box(const Seg& s, const Interval& xs, const Interval& ys);

}  // namespace ivpkit
