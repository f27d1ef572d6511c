#include "ivpkit/ccseq.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ivpkit/errors.hpp"
#include "ivpkit/mahavier.hpp"
#include "ivpkit/parallel.hpp"

namespace ivpkit {

Frame CCCertificate::frame(int i) const {
  return {intervals.at(i - m), intervals.at(i - 1 - m), steps.at(i - m - 1).eps};
}

const PLGraph& bonding_map(const std::vector<PLGraph>& seq, int i) {
  if (seq.empty() || i < 1) throw PreconditionError("bonding_map: index out of range");
  return seq[std::min<std::size_t>(static_cast<std::size_t>(i - 1), seq.size() - 1)];
}

void require_cc_hypotheses(const std::vector<PLGraph>& seq) {
  if (seq.empty()) throw HypothesisError("empty bonding sequence");
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const std::string who = "f_" + std::to_string(k + 1);
    if (!validate(seq[k]).domain_total) throw HypothesisError(who + " is not domain-total");
    if (!is_surjective(seq[k]).surjective) throw HypothesisError(who + " is not surjective");
    if (!is_graph_connected(seq[k]).connected) throw HypothesisError(who + " has a disconnected graph");
  }
}

namespace {

bool proper(const Interval& a) { return 0 <= a.lo && a.lo <= a.hi && a.hi <= 1 && !(a.lo == 0 && a.hi == 1); }

// Sup-norm distance from the box dom x cod to a segment missing it.
Rat box_distance(const Seg& s, const Interval& dom, const Interval& cod) {
  HSystem sys(2);  // (t, delta)
  const Rat dx = s.q().x - s.p().x, dy = s.q().y - s.p().y;
  sys.add_le({dx, -1}, dom.hi - s.p().x);
  sys.add_le({-dx, -1}, s.p().x - dom.lo);
  sys.add_le({dy, -1}, cod.hi - s.p().y);
  sys.add_le({-dy, -1}, s.p().y - cod.lo);
  sys.bound_var(0, 0, 1);
  auto r = variable_range(sys, 1);
  return r && r->lo ? *r->lo : Rat(0);
}

const SSetCertificate* holding(const std::vector<SSetCertificate>& certs, const Pt& z) {
  for (const auto& c : certs)
    for (const Seg& s : c.component_c)
      if (on_segment(z, s)) return &c;
  return nullptr;
}

bool any_of(LabelSet s, std::initializer_list<Label> ls) {
  return std::any_of(ls.begin(), ls.end(), [&](Label l) { return s.has(l); });
}

}  // namespace

LabelSet limit_labels(const PLGraph& g, const Interval& dom, const Interval& cod, const Pt& z) {
  const Arrangement arr(g);
  std::optional<Rat> gap;
  auto consider = [&](const Rat& d) {
    if (d > 0 && (!gap || d < *gap)) gap = d;
  };
  for (const Seg& s : arr.segs()) {
    if (!clip_to_box(s, dom, cod)) consider(box_distance(s, dom, cod));
    for (const Pt& v : {s.p(), s.q()}) {
      Rat ex = v.x < dom.lo ? Rat(dom.lo - v.x) : v.x > dom.hi ? Rat(v.x - dom.hi) : Rat(0);
      Rat ey = v.y < cod.lo ? Rat(cod.lo - v.y) : v.y > cod.hi ? Rat(v.y - cod.hi) : Rat(0);
      consider(std::max(ex, ey));
    }
  }
  const Frame f{dom, cod, gap ? Rat(*gap / 2) : Rat(1, 2)};
  LabelSet all;
  for (Label l : kAllLabels) all.insert(l);
  const auto certs = classify_sset(arr, f, all);
  const SSetCertificate* c = holding(certs, z);
  return c ? c->labels : LabelSet{};
}

CCReport cc_validate(const std::vector<PLGraph>& seq, const CCCertificate& cert) {
  require_cc_hypotheses(seq);
  CCReport rep;
  auto fail = [&](const char* what, std::string detail) {
    rep.failed = what;
    rep.detail = std::move(detail);
    return rep;
  };
  const int m = cert.m, n = cert.n;
  const auto width = static_cast<std::size_t>(n - m);
  if (m < 0 || m + 1 >= n) return fail("window", "need 0 <= m and m + 1 < n");
  if (cert.intervals.size() != width + 1 || cert.pivot.size() != width + 1 || cert.steps.size() != width)
    return fail("window", "interval, pivot or step count does not match the window");

  for (std::size_t k = 0; k <= width; ++k)
    if (!proper(cert.intervals[k])) return fail("frames", "A_" + std::to_string(m + k) + " is not a proper subinterval");
  for (std::size_t k = 0; k < width; ++k)
    if (cert.steps[k].eps <= 0) return fail("frames", "eps must be positive");

  auto p = [&](int i) -> const Rat& { return cert.pivot[i - m]; };
  for (int i = m; i <= n; ++i)
    if (!cert.intervals[i - m].contains(p(i))) return fail("pivot membership", "p_" + std::to_string(i) + " not in A_i");
  for (int i = m + 1; i <= n; ++i)
    if (!contains(bonding_map(seq, i), {p(i), p(i - 1)}))
      return fail("pivot membership", "p_" + std::to_string(i - 1) + " not in f_" + std::to_string(i) + "(p_" +
                                          std::to_string(i) + ")");

  if (!cert.left_extension.empty()) {
    if (cert.left_extension.size() != static_cast<std::size_t>(m))
      return fail("extendability", "left extension must list p_{m-1} .. p_0");
    Rat cur = p(m);
    for (int k = m; k >= 1; --k) {
      const Rat& next = cert.left_extension[m - k];
      if (!contains(bonding_map(seq, k), {cur, next}))
        return fail("extendability", "left extension breaks at index " + std::to_string(k));
      cur = next;
    }
  }
  if (cert.right_extension && !contains(bonding_map(seq, n + 1), {*cert.right_extension, p(n)}))
    return fail("extendability", "p_n is not a value of f_{n+1} at the given point");

  for (int i = m + 1; i <= n; ++i) {
    const CCStep& st = cert.steps[i - m - 1];
    const Frame f = cert.frame(i);
    const auto certs = classify_sset(bonding_map(seq, i), f);
    const SSetCertificate* c = holding(certs, {p(i), p(i - 1)});
    if (!c || !c->labels.has(st.label))
      return fail("S-set claim", "step " + std::to_string(i) + " is not a " + to_string(st.label) + "-set at eps " +
                                     to_string(st.eps));
  }

  for (int i = m + 1; i <= n; ++i)
    rep.truth.push_back(limit_labels(bonding_map(seq, i), cert.intervals[i - m], cert.intervals[i - 1 - m],
                                     {p(i), p(i - 1)}));
  auto truth = [&](int i) { return rep.truth[i - m - 1]; };
  using enum Label;

  if (!any_of(truth(m + 1), {L, R})) return fail("clause 1", "C_{m+1} is neither an L-set nor an R-set");
  if (n == m + 2) {
    if (truth(m + 1).has(L) && !truth(m + 2).has(T)) return fail("clause 2", "L at m+1 needs T at m+2");
    if (truth(m + 1).has(R) && !truth(m + 2).has(B)) return fail("clause 2", "R at m+1 needs B at m+2");
  } else {
    if (truth(m + 1).has(R) && !any_of(truth(m + 2), {BR, BL})) return fail("clause 2", "R at m+1 needs BR or BL at m+2");
    if (truth(m + 1).has(L) && !any_of(truth(m + 2), {TL, TR})) return fail("clause 2", "L at m+1 needs TL or TR at m+2");
  }
  for (int i = m + 2; i < n - 1; ++i) {
    if (any_of(truth(i), {BR, TR}) && !any_of(truth(i + 1), {BL, BR}))
      return fail("clause 3", "step " + std::to_string(i + 1) + " needs BL or BR");
    if (any_of(truth(i), {BL, TL}) && !any_of(truth(i + 1), {TL, TR}))
      return fail("clause 3", "step " + std::to_string(i + 1) + " needs TL or TR");
  }
  if (n > m + 2) {
    if (any_of(truth(n - 1), {BR, TR}) && !truth(n).has(B)) return fail("clause 4", "step n needs B");
    if (any_of(truth(n - 1), {BL, TL}) && !truth(n).has(T)) return fail("clause 4", "step n needs T");
  }
  rep.valid = true;
  return rep;
}

namespace {

using enum Label;

// Claims allowed at step k (1-based within the window of width w) after prev.
std::vector<Label> allowed(int k, int w, std::optional<Label> prev) {
  if (k == 1) return {L, R};
  const bool right = *prev == R || *prev == BR || *prev == TR;
  if (k == 2) {
    if (w == 2) return {right ? B : T};
    return right ? std::vector<Label>{BL, BR} : std::vector<Label>{TL, TR};
  }
  if (k < w) return right ? std::vector<Label>{BL, BR} : std::vector<Label>{TL, TR};
  return {right ? B : T};
}

std::vector<Interval> interval_grid(const std::vector<PLGraph>& seq, int i, int depth) {
  std::vector<Rat> base{0, 1};
  if (i >= 1) {
    auto xs = critical_xs(canonicalize(bonding_map(seq, i)));
    base.insert(base.end(), xs.begin(), xs.end());
  }
  auto ys = critical_ys(canonicalize(bonding_map(seq, i + 1)));
  base.insert(base.end(), ys.begin(), ys.end());
  const auto pts = refine_dyadic(base, depth);
  std::vector<Interval> out;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a; b < pts.size(); ++b)
      if (!(pts[a] == 0 && pts[b] == 1)) out.push_back({pts[a], pts[b]});
  return out;
}

Interval x_extent(const std::vector<Seg>& c) {
  Interval r{c.front().p().x, c.front().q().x};
  for (const Seg& s : c) {
    r.lo = std::min(r.lo, s.p().x);
    r.hi = std::max(r.hi, s.q().x);
  }
  return r;
}

Interval y_extent(const std::vector<Seg>& c) {
  Interval r{std::min(c.front().p().y, c.front().q().y), std::max(c.front().p().y, c.front().q().y)};
  for (const Seg& s : c) {
    r.lo = std::min({r.lo, s.p().y, s.q().y});
    r.hi = std::max({r.hi, s.p().y, s.q().y});
  }
  return r;
}

bool overlap(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

std::optional<Rat> preimage_point(const PLGraph& g, const Rat& y) {
  for (const Seg& s : g.segs) {
    const Rat lo = std::min(s.p().y, s.q().y), hi = std::max(s.p().y, s.q().y);
    if (y < lo || y > hi) continue;
    if (s.p().y == s.q().y) return s.p().x;
    return Rat(s.p().x + (y - s.p().y) * (s.q().x - s.p().x) / (s.q().y - s.p().y));
  }
  return std::nullopt;
}

class WindowSearch {
 public:
  WindowSearch(const std::vector<PLGraph>& seq, int m, int n, const CCSearchOptions& opts)
      : seq_(seq), m_(m), n_(n), opts_(opts) {
    for (int i = m; i <= n; ++i) grids_.push_back(interval_grid(seq, i, opts.frame_depth));
    for (int i = m + 1; i <= n; ++i) arrs_.emplace_back(bonding_map(seq, i));
  }

  const std::vector<Interval>& grid(int i) const { return grids_[i - m_]; }

  // Everything below a fixed A_{m+1}.
  std::optional<CCCertificate> run(const Interval& a1) {
    chain_.assign(n_ - m_ + 1, {});
    labels_.assign(n_ - m_, L);
    comps_.assign(n_ - m_, {});
    memo_.clear();
    chain_[1] = a1;
    for (const Interval& a0 : grid(m_)) {
      chain_[0] = a0;
      const Frame f{a1, a0, opts_.eps};
      for (const auto& c : classify_sset(arrs_[0], f, LabelSet{L, R})) {
        for (Label l : allowed(1, n_ - m_, std::nullopt)) {
          if (!c.labels.has(l)) continue;
          labels_[0] = l;
          comps_[0] = c.component_c;
          bool leaf = false;
          if (auto r = extend(2, x_extent(c.component_c), leaf)) return r;
        }
      }
    }
    return std::nullopt;
  }

 private:
  using Key = std::tuple<int, Rat, Rat, int, Rat, Rat>;

  // Fills A_{m+k} given the prefix; px bounds p_{m+k-1}.
  std::optional<CCCertificate> extend(int k, const Interval& px, bool& reached_leaf) {
    const int w = n_ - m_;
    if (k > w) {
      reached_leaf = true;
      return finish();
    }
    const Label prev = labels_[k - 2];
    const Key key{k, chain_[k - 1].lo, chain_[k - 1].hi, static_cast<int>(prev), px.lo, px.hi};
    if (memo_.count(key)) return std::nullopt;
    bool leaf_below = false;
    const auto want = allowed(k, w, prev);
    LabelSet mask;
    for (Label l : want) mask.insert(l);
    for (const Interval& a : grid(m_ + k)) {
      chain_[k] = a;
      const Frame f{a, chain_[k - 1], opts_.eps};
      for (const auto& c : classify_sset(arrs_[k - 1], f, mask)) {
        if (!overlap(y_extent(c.component_c), px)) continue;
        for (Label l : want) {
          if (!c.labels.has(l)) continue;
          labels_[k - 1] = l;
          comps_[k - 1] = c.component_c;
          if (auto r = extend(k + 1, x_extent(c.component_c), leaf_below)) {
            reached_leaf = true;
            return r;
          }
        }
      }
    }
    if (leaf_below)
      reached_leaf = true;
    else
      memo_.insert(key);
    return std::nullopt;
  }

  std::optional<CCCertificate> finish() {
    const int w = n_ - m_;
    std::vector<PLGraph> parts;
    for (const auto& c : comps_) parts.push_back({c, {}});
    const CellComplex cc = build(parts, w);
    for (const auto& pv : pivot_candidates(cc, chain_)) {
      CCCertificate cert;
      cert.m = m_;
      cert.n = n_;
      cert.intervals = chain_;
      for (int k = 0; k < w; ++k) cert.steps.push_back({labels_[k], opts_.eps});
      cert.pivot = pv;
      Rat cur = pv.front();
      for (int i = m_; i >= 1; --i) {
        const ValueSet v = values_at(bonding_map(seq_, i), cur);
        cur = v.intervals.front().lo;
        cert.left_extension.push_back(cur);
      }
      cert.right_extension = preimage_point(bonding_map(seq_, n_ + 1), pv.back());
      if (cc_validate(seq_, cert).valid) return cert;
    }
    return std::nullopt;
  }

  const std::vector<PLGraph>& seq_;
  int m_, n_;
  CCSearchOptions opts_;
  std::vector<std::vector<Interval>> grids_;
  std::vector<Arrangement> arrs_;
  std::vector<Interval> chain_;
  std::vector<Label> labels_;
  std::vector<std::vector<Seg>> comps_;
  std::set<Key> memo_;
};

}  // namespace

std::optional<CCCertificate> cc_search(const std::vector<PLGraph>& seq, const CCSearchOptions& opts) {
  require_cc_hypotheses(seq);
  if (opts.max_window < 2 || opts.frame_depth < 0 || opts.eps <= 0)
    throw PreconditionError("cc_search: need max_window >= 2, frame_depth >= 0, eps > 0");
  const int threads = opts.threads > 0 ? opts.threads : default_threads();
  const int last_m = std::max(0, static_cast<int>(seq.size()) - 1);
  for (int w = 2; w <= opts.max_window; ++w)
    for (int m = 0; m <= last_m; ++m) {
      const WindowSearch proto(seq, m, m + w, opts);
      const auto& firsts = proto.grid(m + 1);
      // Batches of A_{m+1} values; the least success in a batch wins, so the
      // answer does not depend on the thread count.
      const std::size_t batch = static_cast<std::size_t>(threads);
      for (std::size_t start = 0; start < firsts.size(); start += batch) {
        const std::size_t len = std::min(batch, firsts.size() - start);
        std::vector<std::optional<CCCertificate>> found(len);
        parallel_for(
            len,
            [&](std::size_t k) {
              WindowSearch ws = proto;
              found[k] = ws.run(firsts[start + k]);
            },
            threads);
        for (auto& f : found)
          if (f) return f;
      }
    }
  return std::nullopt;
}

}  // namespace ivpkit
