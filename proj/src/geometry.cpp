#include "ivpkit/geometry.hpp"

#include <algorithm>

namespace ivpkit {

int orient(const Pt& a, const Pt& b, const Pt& c) {
  Rat v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(v);
}

bool on_segment(const Pt& x, const Seg& s) {
  if (orient(s.p(), s.q(), x) != 0) return false;
  return s.p() <= x && x <= s.q();
}

Rat y_at(const Seg& s, const Rat& x) {
  const Pt& p = s.p();
  const Pt& q = s.q();
  return Rat(p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x));
}

Pt lerp(const Seg& s, const Rat& t) {
  return {Rat(s.p().x + t * (s.q().x - s.p().x)), Rat(s.p().y + t * (s.q().y - s.p().y))};
}

SegIntersection seg_intersect(const Seg& s, const Seg& t) {
  if (s.degenerate()) {
    if (on_segment(s.p(), t)) return s.p();
    return {};
  }
  if (t.degenerate()) {
    if (on_segment(t.p(), s)) return t.p();
    return {};
  }
  const int o1 = orient(s.p(), s.q(), t.p());
  const int o2 = orient(s.p(), s.q(), t.q());
  if (o1 == 0 && o2 == 0) {
    // Collinear: lexicographic order is monotone along the common line.
    const Pt& lo = std::max(s.p(), t.p());
    const Pt& hi = std::min(s.q(), t.q());
    if (lo < hi) return Seg(lo, hi);
    if (lo == hi) return lo;
    return {};
  }
  const int o3 = orient(t.p(), t.q(), s.p());
  const int o4 = orient(t.p(), t.q(), s.q());
  if (o1 * o2 > 0 || o3 * o4 > 0) return {};
  if (o1 == 0) return t.p();
  if (o2 == 0) return t.q();
  if (o3 == 0) return s.p();
  if (o4 == 0) return s.q();
  const Rat dx1 = s.q().x - s.p().x, dy1 = s.q().y - s.p().y;
  const Rat dx2 = t.q().x - t.p().x, dy2 = t.q().y - t.p().y;
  const Rat den = dx1 * dy2 - dy1 * dx2;
  const Rat u = ((t.p().x - s.p().x) * dy2 - (t.p().y - s.p().y) * dx2) / den;
  return lerp(s, u);
}

std::optional<Seg> clip_to_strip(const Seg& s, const Rat& a, const Rat& b) {
  if (s.q().x < a || s.p().x > b) return std::nullopt;
  if (s.vertical()) return s;
  const Rat& lo = std::max(a, s.p().x);
  const Rat& hi = std::min(b, s.q().x);
  Pt l = lo == s.p().x ? s.p() : Pt{lo, y_at(s, lo)};
  Pt r = hi == s.q().x ? s.q() : Pt{hi, y_at(s, hi)};
  return Seg(std::move(l), std::move(r));
}

std::optional<Seg> clip_to_box(const Seg& s, const Interval& xs, const Interval& ys) {
  // Parameter range t in [lo, hi] along p -> q.
  Rat lo = 0, hi = 1;
  auto restrict = [&](const Rat& start, const Rat& delta, const Interval& range) {
    if (delta == 0) {
      if (!range.contains(start)) {
        lo = 1;
        hi = 0;
      }
      return;
    }
    Rat t0 = (range.lo - start) / delta;
    Rat t1 = (range.hi - start) / delta;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > lo) lo = t0;
    if (t1 < hi) hi = t1;
  };
  restrict(s.p().x, s.q().x - s.p().x, xs);
  restrict(s.p().y, s.q().y - s.p().y, ys);
  if (lo > hi) return std::nullopt;
  return Seg(lerp(s, lo), lerp(s, hi));
}

}  // namespace ivpkit
