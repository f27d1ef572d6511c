#include "ivpkit/ssets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ivpkit/errors.hpp"
#include "union_find.hpp"

namespace ivpkit {

using detail::UnionFind;

bool frame_valid(const Frame& f) {
  auto proper = [](const Interval& i) {
    return 0 <= i.lo && i.lo <= i.hi && i.hi <= 1 && !(i.lo == 0 && i.hi == 1);
  };
  return proper(f.dom) && proper(f.cod) && f.eps > 0;
}

std::string to_string(Label l) {
  switch (l) {
    case Label::L: return "L";
    case Label::R: return "R";
    case Label::B: return "B";
    case Label::T: return "T";
    case Label::BL: return "BL";
    case Label::BR: return "BR";
    case Label::TL: return "TL";
    case Label::TR: return "TR";
  }
  return "?";
}

std::optional<Label> parse_label(const std::string& s) {
  for (Label l : kAllLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::vector<Label> LabelSet::labels() const {
  std::vector<Label> out;
  for (Label l : kAllLabels)
    if (has(l)) out.push_back(l);
  return out;
}

LabelSet admissible_labels(const Frame& f) {
  LabelSet s{Label::BL, Label::BR, Label::TL, Label::TR};
  if (0 < f.dom.lo && f.dom.hi < 1) {
    s.insert(Label::L);
    s.insert(Label::R);
  }
  if (0 < f.cod.lo && f.cod.hi < 1) {
    s.insert(Label::B);
    s.insert(Label::T);
  }
  return s;
}

bool Box::contains(const Pt& p) const {
  auto in = [](const Span& s, const Rat& v) {
    return (s.lo_open ? s.lo < v : s.lo <= v) && (s.hi_open ? v < s.hi : v <= s.hi);
  };
  return in(x, p.x) && in(y, p.y);
}

bool Region::contains(const Pt& p) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p); });
}

SSetRegions::SSetRegions(const Frame& f) {
  const Span unit{0, 1, false, false};
  j_dom = {0, f.dom.lo, false, true};
  k_dom = {f.dom.hi, 1, true, false};
  j_cod = {0, f.cod.lo, false, true};
  k_cod = {f.cod.hi, 1, true, false};
  z = {{f.dom.lo, f.dom.hi, false, false}, {f.cod.lo, f.cod.hi, false, false}};
  t = {{{unit, k_cod}, z}};
  b = {{{unit, j_cod}, z}};
  l = {{{j_dom, unit}, z}};
  r = {{{k_dom, unit}, z}};
  auto join = [](const Region& u, const Region& v) {
    Region out = u;
    out.boxes.insert(out.boxes.end(), v.boxes.begin(), v.boxes.end());
    return out;
  };
  tl = join(t, l);
  tr = join(t, r);
  bl = join(b, l);
  br = join(b, r);
}

const Region& SSetRegions::region(Label lab) const {
  switch (lab) {
    case Label::L: return l;
    case Label::R: return r;
    case Label::B: return b;
    case Label::T: return t;
    case Label::BL: return bl;
    case Label::BR: return br;
    case Label::TL: return tl;
    case Label::TR: return tr;
  }
  return l;
}

namespace {

// Parametric clip of a segment to an open box; t runs from p to q.
bool narrow(const Rat& start, const Rat& delta, const Rat& lo, const Rat& hi, Rat& t0, bool& o0, Rat& t1,
            bool& o1) {
  if (delta == 0) return lo < start && start < hi;
  Rat a = (lo - start) / delta;
  Rat b = (hi - start) / delta;
  if (a > b) std::swap(a, b);
  if (a >= t0) {
    t0 = a;
    o0 = true;
  }
  if (b <= t1) {
    t1 = b;
    o1 = true;
  }
  return true;
}

struct OpenBox {
  Rat xlo, xhi, ylo, yhi;
  bool contains(const Pt& p) const { return xlo < p.x && p.x < xhi && ylo < p.y && p.y < yhi; }
};

OpenBox enlarged(const Frame& f) {
  return {f.dom.lo - f.eps, f.dom.hi + f.eps, f.cod.lo - f.eps, f.cod.hi + f.eps};
}

std::optional<Piece> clip_open(const Seg& s, std::size_t id, const OpenBox& box) {
  Rat t0 = 0, t1 = 1;
  bool o0 = false, o1 = false;
  if (!narrow(s.p().x, s.q().x - s.p().x, box.xlo, box.xhi, t0, o0, t1, o1)) return std::nullopt;
  if (!narrow(s.p().y, s.q().y - s.p().y, box.ylo, box.yhi, t0, o0, t1, o1)) return std::nullopt;
  if (t0 > t1 || (t0 == t1 && (o0 || o1))) return std::nullopt;
  return Piece{id, Seg(lerp(s, t0), lerp(s, t1)), o0, o1};
}

bool in_label(const Frame& f, Label l, const Pt& p) {
  const bool z = f.dom.contains(p.x) && f.cod.contains(p.y);
  const bool j1 = p.x < f.dom.lo, k1 = p.x > f.dom.hi;
  const bool j0 = p.y < f.cod.lo, k0 = p.y > f.cod.hi;
  switch (l) {
    case Label::L: return z || j1;
    case Label::R: return z || k1;
    case Label::B: return z || j0;
    case Label::T: return z || k0;
    case Label::BL: return z || j0 || j1;
    case Label::BR: return z || j0 || k1;
    case Label::TL: return z || k0 || j1;
    case Label::TR: return z || k0 || k1;
  }
  return false;
}

// Points of the piece at which membership in a region bounded by the given lines
// can change, plus one point inside each run between them.
std::vector<Pt> probe_points(const Piece& pc, const std::vector<Rat>& xlines, const std::vector<Rat>& ylines) {
  const Seg& s = pc.seg;
  if (s.degenerate()) return {s.p()};
  std::set<Rat> ts{Rat(0), Rat(1)};
  const Rat dx = s.q().x - s.p().x, dy = s.q().y - s.p().y;
  auto add = [&](const Rat& line, const Rat& start, const Rat& d) {
    if (d == 0) return;
    Rat t = (line - start) / d;
    if (0 < t && t < 1) ts.insert(t);
  };
  for (const Rat& x : xlines) add(x, s.p().x, dx);
  for (const Rat& y : ylines) add(y, s.p().y, dy);
  std::vector<Rat> v(ts.begin(), ts.end());
  std::vector<Pt> out;
  if (!pc.p_open) out.push_back(s.p());
  if (!pc.q_open) out.push_back(s.q());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (i > 0) out.push_back(lerp(s, v[i]));
    out.push_back(lerp(s, midpoint(v[i], v[i + 1])));
  }
  return out;
}

std::vector<std::vector<Seg>> z_components(const std::vector<Seg>& segs, const std::vector<std::size_t>& ids,
                                           const std::vector<Arrangement::Contact>& contacts, const Frame& f) {
  std::map<std::size_t, Seg> zpiece;
  for (std::size_t id : ids)
    if (auto c = clip_to_box(segs[id], f.dom, f.cod)) zpiece.emplace(id, *c);
  UnionFind uf(segs.size());
  for (const auto& c : contacts)
    if (zpiece.count(c.i) && zpiece.count(c.j) && f.dom.contains(c.at.x) && f.cod.contains(c.at.y))
      uf.unite(c.i, c.j);
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Seg>> out;
  for (const auto& [id, seg] : zpiece) {
    auto [it, fresh] = slot.try_emplace(uf.find(id), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(seg);
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

}  // namespace

std::vector<SSetCertificate> classify_sset(const Arrangement& arr, const Frame& f, LabelSet mask) {
  if (!frame_valid(f)) throw PreconditionError("classify_sset: invalid frame");
  const LabelSet wanted = admissible_labels(f) & mask;
  if (wanted.empty()) return {};
  const OpenBox box = enlarged(f);
  const auto& segs = arr.segs();

  std::vector<std::optional<Piece>> pieces(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) pieces[i] = clip_open(segs[i], i, box);
  UnionFind uf(segs.size());
  for (const auto& c : arr.contacts())
    if (box.contains(c.at)) uf.unite(c.i, c.j);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!pieces[i]) continue;
    auto& g = groups[uf.find(i)];
    if (g.empty()) order.push_back(uf.find(i));
    g.push_back(i);
  }

  const std::vector<Rat> xl{f.dom.lo, f.dom.hi}, yl{f.cod.lo, f.cod.hi};
  std::vector<SSetCertificate> out;
  for (std::size_t root : order) {
    const auto& ids = groups[root];
    LabelSet labels;
    for (Label l : wanted.labels()) {
      bool inside = true;
      for (std::size_t id : ids) {
        for (const Pt& p : probe_points(*pieces[id], xl, yl))
          if (!in_label(f, l, p)) {
            inside = false;
            break;
          }
        if (!inside) break;
      }
      if (inside) labels.insert(l);
    }
    if (labels.empty()) continue;
    auto comps = z_components(segs, ids, arr.contacts(), f);
    if (comps.empty()) continue;
    std::vector<Piece> cprime;
    for (std::size_t id : ids) cprime.push_back(*pieces[id]);
    for (auto& c : comps) out.push_back({f, labels, cprime, std::move(c)});
  }
  return out;
}

std::vector<SSetCertificate> classify_sset(const PLGraph& g, const Frame& f) {
  LabelSet all;
  for (Label l : kAllLabels) all.insert(l);
  return classify_sset(Arrangement(g), f, all);
}

bool recheck_sset(const PLGraph& g, const SSetCertificate& cert) {
  const Frame& f = cert.frame;
  if (!frame_valid(f) || cert.labels.empty()) return false;
  const LabelSet adm = admissible_labels(f);
  for (Label l : cert.labels.labels())
    if (!adm.has(l)) return false;

  const PLGraph cg = canonicalize(g);
  const Rat xlo = f.dom.lo - f.eps, xhi = f.dom.hi + f.eps;
  const Rat ylo = f.cod.lo - f.eps, yhi = f.cod.hi + f.eps;
  auto strictly_inside = [&](const Pt& p) { return xlo < p.x && p.x < xhi && ylo < p.y && p.y < yhi; };
  auto on_rim = [&](const Pt& p) { return p.x == xlo || p.x == xhi || p.y == ylo || p.y == yhi; };

  // Closed clip, then reopen the ends that sit on the rim of the enlarged box.
  std::vector<Piece> pieces;
  const Interval cx{std::max(xlo, Rat(0)), std::min(xhi, Rat(1))};
  const Interval cy{std::max(ylo, Rat(0)), std::min(yhi, Rat(1))};
  for (std::size_t i = 0; i < cg.segs.size(); ++i) {
    auto c = clip_to_box(cg.segs[i], cx, cy);
    if (!c) continue;
    if (!strictly_inside(lerp(*c, Rat(1, 2)))) continue;
    pieces.push_back({i, *c, on_rim(c->p()), on_rim(c->q())});
  }
  UnionFind uf(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      auto r = seg_intersect(pieces[i].seg, pieces[j].seg);
      if (auto* p = std::get_if<Pt>(&r); p && strictly_inside(*p)) uf.unite(i, j);
    }

  auto key = [](const Piece& p) { return std::tuple(p.seg, p.p_open, p.q_open); };
  std::vector<std::tuple<Seg, bool, bool>> claimed;
  for (const auto& p : cert.component_cprime) claimed.push_back(key(p));
  std::sort(claimed.begin(), claimed.end());
  if (claimed.empty()) return false;

  std::vector<Piece> cprime;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].seg == std::get<0>(claimed.front())) {
      for (std::size_t j = 0; j < pieces.size(); ++j)
        if (uf.find(j) == uf.find(i)) cprime.push_back(pieces[j]);
    }
  std::vector<std::tuple<Seg, bool, bool>> found;
  for (const auto& p : cprime) found.push_back(key(p));
  std::sort(found.begin(), found.end());
  if (found != claimed) return false;

  const SSetRegions regions(f);
  for (Label l : cert.labels.labels()) {
    const Region& reg = regions.region(l);
    std::vector<Rat> xl, yl;
    for (const Box& b : reg.boxes) {
      xl.insert(xl.end(), {b.x.lo, b.x.hi});
      yl.insert(yl.end(), {b.y.lo, b.y.hi});
    }
    for (const Piece& pc : cprime)
      for (const Pt& p : probe_points(pc, xl, yl))
        if (!reg.contains(p)) return false;
  }

  std::vector<Seg> zs;
  for (const Piece& pc : cprime)
    if (auto c = clip_to_box(pc.seg, f.dom, f.cod)) zs.push_back(*c);
  UnionFind zu(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      if (!empty(seg_intersect(zs[i], zs[j]))) zu.unite(i, j);
  std::vector<Seg> claimed_c = cert.component_c;
  std::sort(claimed_c.begin(), claimed_c.end());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    std::vector<Seg> comp;
    for (std::size_t j = 0; j < zs.size(); ++j)
      if (zu.find(j) == zu.find(i)) comp.push_back(zs[j]);
    std::sort(comp.begin(), comp.end());
    if (comp == claimed_c) return true;
  }
  return false;
}

std::vector<Rat> refine_dyadic(const std::vector<Rat>& coords, int depth) {
  std::vector<Rat> c = coords;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  const long steps = 1L << depth;
  std::vector<Rat> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.push_back(c[i]);
    if (i + 1 == c.size()) break;
    for (long k = 1; k < steps; ++k) out.push_back(Rat(c[i] + (c[i + 1] - c[i]) * k / steps));
  }
  return out;
}

namespace {

// Exact prefilter for the L/R search. Every crossing parameter a segment can need
// is computed once, so a frame costs only comparisons. A frame passes when some
// component of G ∩ Z(eps) meets Z and avoids the part of Z(eps) outside L (or R);
// passing frames are then classified in full.
// A rational with its truncated double. Truncation is monotone, so distinct
// doubles already order the rationals; only ties need the exact comparison.
struct QR {
  Rat r;
  double d;
  explicit QR(Rat v) : r(std::move(v)), d(r.get_d()) {}
};

inline int qcmp(const QR& a, const QR& b) {
  if (a.d < b.d) return -1;
  if (a.d > b.d) return 1;
  return cmp(a.r, b.r);
}
inline bool operator<(const QR& a, const QR& b) { return qcmp(a, b) < 0; }
inline bool operator>(const QR& a, const QR& b) { return qcmp(a, b) > 0; }
inline bool operator<=(const QR& a, const QR& b) { return qcmp(a, b) <= 0; }
inline bool operator>=(const QR& a, const QR& b) { return qcmp(a, b) >= 0; }

class LrFilter {
 public:
  LrFilter(const Arrangement& arr, const std::vector<Rat>& xs, const std::vector<Rat>& ys,
           const std::vector<Rat>& eps)
      : arr_(arr) {
    xvals_ = lines(xs, eps);
    yvals_ = lines(ys, eps);
    for (const Seg& s : arr.segs()) {
      SegLines sl{sgn(Rat(s.q().x - s.p().x)), sgn(Rat(s.q().y - s.p().y)), QR(s.p().x), QR(s.p().y), {}, {}};
      const Rat dx = s.q().x - s.p().x, dy = s.q().y - s.p().y;
      if (dx != 0)
        for (const QR& v : xvals_) sl.tx.emplace_back(Rat((v.r - s.p().x) / dx));
      if (dy != 0)
        for (const QR& v : yvals_) sl.ty.emplace_back(Rat((v.r - s.p().y) / dy));
      segs_.push_back(std::move(sl));
    }
    for (const auto& c : arr.contacts()) contacts_.push_back({c.i, c.j, QR(c.at.x), QR(c.at.y)});
  }

  std::size_t xi(const Rat& v) const { return index(xvals_, v); }
  std::size_t yi(const Rat& v) const { return index(yvals_, v); }

  struct XLines {
    std::size_t lo, a, b, hi;
  };
  struct YLines {
    std::size_t lo, a, b, hi;
  };

  struct TSpan {
    const QR* t0 = nullptr;
    const QR* t1 = nullptr;
    bool o0 = false, o1 = false;
    bool present = false;
  };

  // x-clip of every segment to the open strip (lo, hi).
  std::vector<TSpan> clip_x(const XLines& x) const {
    std::vector<TSpan> out(segs_.size());
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& sl = segs_[i];
      TSpan t{&zero_, &one_, false, false, true};
      if (sl.dx == 0) {
        const QR& px = sl.px;
        t.present = xvals_[x.lo] < px && px < xvals_[x.hi];
      } else {
        narrow(t, sl.tx[x.lo], sl.tx[x.hi]);
      }
      out[i] = t;
    }
    return out;
  }

  struct Scratch {
    std::vector<signed char> state;
    std::vector<int> acc;
    std::vector<std::size_t> parent;
  };

  bool candidate(const std::vector<TSpan>& xclip, const XLines& x, const YLines& y, Scratch& sc) const {
    const auto& segs = arr_.segs();
    const std::size_t n = segs.size();
    auto& state = sc.state;  // bit0: L ok, bit1: R ok, bit2: meets Z
    state.assign(n, -1);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!xclip[i].present) continue;
      const auto& sl = segs_[i];
      TSpan t = xclip[i];
      if (sl.dy == 0) {
        const QR& py = sl.py;
        if (!(yvals_[y.lo] < py && py < yvals_[y.hi])) continue;
      } else if (sl.dy > 0) {
        narrow(t, sl.ty[y.lo], sl.ty[y.hi]);
      } else {
        narrow(t, sl.ty[y.hi], sl.ty[y.lo]);
      }
      if (!t.present) continue;
      int st = 0;
      if (l_ok(i, t, x, y)) st |= 1;
      if (r_ok(i, t, x, y)) st |= 2;
      if (st != 0) any = true;
      if (meets_z(i, t, x, y)) st |= 4;
      state[i] = static_cast<signed char>(st);
    }
    if (!any) return false;

    auto& parent = sc.parent;
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& c : contacts_)
      if (state[c.i] >= 0 && state[c.j] >= 0 && xvals_[x.lo] < c.x && c.x < xvals_[x.hi] && yvals_[y.lo] < c.y &&
          c.y < yvals_[y.hi])
        parent[find(c.i)] = find(c.j);
    auto& acc = sc.acc;  // per root: L ok, R ok, then bit2 once Z is met; -1 unused
    acc.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] < 0) continue;
      int& a = acc[find(i)];
      if (a < 0) a = 3;
      a = (a & state[i] & 3) | ((a | state[i]) & 4);
    }
    for (int a : acc)
      if (a > 0 && (a & 4) && (a & 3)) return true;
    return false;
  }

 private:
  struct SegLines {
    int dx, dy;  // signs
    QR px, py;
    std::vector<QR> tx, ty;
  };
  struct ContactQ {
    std::size_t i, j;
    QR x, y;
  };

  static std::vector<QR> lines(const std::vector<Rat>& base, const std::vector<Rat>& eps) {
    std::vector<Rat> v = base;
    for (const Rat& b : base)
      for (const Rat& e : eps) {
        v.push_back(b - e);
        v.push_back(b + e);
      }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return {v.begin(), v.end()};
  }

  static std::size_t index(const std::vector<QR>& v, const Rat& x) {
    return static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), x, [](const QR& a, const Rat& b) { return a.r < b; }) - v.begin());
  }

  // Same update as clip_open; lo < hi in parameter space.
  static void narrow(TSpan& t, const QR& lo, const QR& hi) {
    if (lo >= *t.t0) {
      t.t0 = &lo;
      t.o0 = true;
    }
    if (hi <= *t.t1) {
      t.t1 = &hi;
      t.o1 = true;
    }
    const int c = qcmp(*t.t0, *t.t1);
    t.present = t.present && (c < 0 || (c == 0 && !t.o0 && !t.o1));
  }

  // Whether the closed parameter range [s0, s1] keeps y inside [a, b].
  bool y_within(std::size_t i, const QR& s0, const QR& s1, const YLines& y) const {
    const auto& sl = segs_[i];
    if (sl.dy == 0) {
      const QR& py = sl.py;
      return yvals_[y.a] <= py && py <= yvals_[y.b];
    }
    if (sl.dy > 0) return s0 >= sl.ty[y.a] && s1 <= sl.ty[y.b];
    return s0 >= sl.ty[y.b] && s1 <= sl.ty[y.a];
  }

  bool l_ok(std::size_t i, const TSpan& t, const XLines& x, const YLines& y) const {
    const auto& sl = segs_[i];
    if (sl.dx == 0) {
      const QR& px = sl.px;
      if (px > xvals_[x.b]) return false;
      if (px < xvals_[x.a]) return true;
      return y_within(i, *t.t0, *t.t1, y);
    }
    const QR& ta = sl.tx[x.a];
    if (*t.t1 > sl.tx[x.b]) return false;
    const QR* s0 = t.t0;
    bool o0 = t.o0;
    if (ta > *t.t0) {
      s0 = &ta;
      o0 = false;
    }
    const int c = qcmp(*s0, *t.t1);
    if (c > 0 || (c == 0 && (o0 || t.o1))) return true;
    return y_within(i, *s0, *t.t1, y);
  }

  bool r_ok(std::size_t i, const TSpan& t, const XLines& x, const YLines& y) const {
    const auto& sl = segs_[i];
    if (sl.dx == 0) {
      const QR& px = sl.px;
      if (px < xvals_[x.a]) return false;
      if (px > xvals_[x.b]) return true;
      return y_within(i, *t.t0, *t.t1, y);
    }
    const QR& tb = sl.tx[x.b];
    if (*t.t0 < sl.tx[x.a]) return false;
    const QR* s1 = t.t1;
    bool o1 = t.o1;
    if (tb < *t.t1) {
      s1 = &tb;
      o1 = false;
    }
    const int c = qcmp(*t.t0, *s1);
    if (c > 0 || (c == 0 && (t.o0 || o1))) return true;
    return y_within(i, *t.t0, *s1, y);
  }

  bool meets_z(std::size_t i, const TSpan& t, const XLines& x, const YLines& y) const {
    const auto& sl = segs_[i];
    TSpan z = t;
    auto cut = [&](const QR& lo, const QR& hi) {
      const int c0 = qcmp(lo, *z.t0), c1 = qcmp(hi, *z.t1);
      if (c0 > 0 || (c0 == 0 && z.o0)) {
        z.t0 = &lo;
        z.o0 = false;
      }
      if (c1 < 0 || (c1 == 0 && z.o1)) {
        z.t1 = &hi;
        z.o1 = false;
      }
    };
    if (sl.dx == 0) {
      if (sl.px < xvals_[x.a] || sl.px > xvals_[x.b]) return false;
    } else {
      cut(sl.tx[x.a], sl.tx[x.b]);
    }
    if (sl.dy == 0) {
      if (sl.py < yvals_[y.a] || sl.py > yvals_[y.b]) return false;
    } else if (sl.dy > 0) {
      cut(sl.ty[y.a], sl.ty[y.b]);
    } else {
      cut(sl.ty[y.b], sl.ty[y.a]);
    }
    const int c = qcmp(*z.t0, *z.t1);
    return c < 0 || (c == 0 && !z.o0 && !z.o1);
  }

  const Arrangement& arr_;
  std::vector<QR> xvals_, yvals_;
  std::vector<SegLines> segs_;
  std::vector<ContactQ> contacts_;
  const QR zero_{Rat(0)};
  const QR one_{Rat(1)};
};

}  // namespace

std::vector<SSetCertificate> find_lr_sets(const PLGraph& g, const LrSearchOptions& opts) {
  const Arrangement arr(g);
  auto grid = [&](std::vector<Rat> base) {
    base.push_back(0);
    base.push_back(1);
    return refine_dyadic(base, opts.depth);
  };
  const auto xs = grid(arr.critical_xs());
  const auto ys = grid(critical_ys(arr.graph()));
  const LabelSet mask{Label::L, Label::R};
  const LrFilter filter(arr, xs, ys, opts.eps_schedule);
  LrFilter::Scratch scratch;

  // A set that works for some eps contains one that works for every smaller eps,
  // so the smallest eps is tried first and a failure there ends the frame.
  std::vector<Rat> eps = opts.eps_schedule;
  std::sort(eps.begin(), eps.end());
  std::vector<SSetCertificate> out;
  std::vector<std::vector<LrFilter::TSpan>> xclip(eps.size());
  std::vector<LrFilter::XLines> xl(eps.size());
  // Within one x-frame the filter only sees where the four y-lines fall among
  // the event heights, so its answers are cached by that pattern.
  std::vector<std::vector<std::uint32_t>> pos_lo(eps.size()), pos_hi(eps.size());
  std::vector<std::unordered_map<std::uint64_t, bool>> seen(eps.size());
  auto events = [&](const Rat& e, const Rat& a, const Rat& b) {
    std::vector<Rat> ev;
    for (const Seg& s : arr.segs()) {
      ev.push_back(s.p().y);
      ev.push_back(s.q().y);
      if (s.vertical()) continue;
      for (const Rat& x : {Rat(a - e), a, b, Rat(b + e)})
        if (s.p().x <= x && x <= s.q().x) ev.push_back(y_at(s, x));
    }
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
    return ev;
  };
  auto pos = [](const std::vector<Rat>& ev, const Rat& v) {
    auto it = std::lower_bound(ev.begin(), ev.end(), v);
    return static_cast<std::uint32_t>(2 * (it - ev.begin()) + (it != ev.end() && *it == v ? 1 : 0));
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0) continue;
    for (std::size_t j = i; j < xs.size() && xs[j] < 1; ++j) {
      for (std::size_t e = 0; e < eps.size(); ++e) {
        xl[e] = {filter.xi(xs[i] - eps[e]), filter.xi(xs[i]), filter.xi(xs[j]), filter.xi(xs[j] + eps[e])};
        xclip[e] = filter.clip_x(xl[e]);
        const auto ev = events(eps[e], xs[i], xs[j]);
        pos_lo[e].clear();
        pos_hi[e].clear();
        for (const Rat& y : ys) {
          pos_lo[e].push_back(pos(ev, y - eps[e]) << 16 | pos(ev, y));
          pos_hi[e].push_back(pos(ev, y) << 16 | pos(ev, y + eps[e]));
        }
        seen[e].clear();
      }
      for (std::size_t k = 0; k < ys.size(); ++k)
        for (std::size_t l = k; l < ys.size(); ++l) {
          if (ys[k] == 0 && ys[l] == 1) continue;
          for (std::size_t e = 0; e < eps.size(); ++e) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(pos_lo[e][k]) << 32 | pos_hi[e][l]) * 2 + (k == l ? 1 : 0);
            auto [it, fresh] = seen[e].try_emplace(key, false);
            if (fresh) {
              const LrFilter::YLines yl{filter.yi(ys[k] - eps[e]), filter.yi(ys[k]), filter.yi(ys[l]),
                                        filter.yi(ys[l] + eps[e])};
              it->second = filter.candidate(xclip[e], xl[e], yl, scratch);
            }
            if (!it->second) break;
            auto found = classify_sset(arr, Frame{{xs[i], xs[j]}, {ys[k], ys[l]}, eps[e]}, mask);
            for (auto& c : found) out.push_back(std::move(c));
          }
        }
    }
  }
  return out;
}

}  // namespace ivpkit
