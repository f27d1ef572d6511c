#include "ivpkit/svg.hpp"

#include <algorithm>
#include <sstream>

namespace ivpkit {

namespace {

constexpr int kMargin = 24;

class Canvas {
 public:
  explicit Canvas(int size) : size_(size) {}

  std::string x(const Rat& v) const { return to_fixed(v * size_ + kMargin, 2); }
  std::string y(const Rat& v) const { return to_fixed((1 - v) * size_ + kMargin, 2); }

  void rect(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1, const std::string& style) {
    os_ << "<rect x=\"" << x(x0) << "\" y=\"" << y(y1) << "\" width=\"" << to_fixed((x1 - x0) * size_, 2)
        << "\" height=\"" << to_fixed((y1 - y0) * size_, 2) << "\" " << style << "/>\n";
  }
  void text(const Rat& px, const Rat& py, const std::string& s, const std::string& style) {
    os_ << "<text x=\"" << x(px) << "\" y=\"" << y(py) << "\" " << style << ">" << s << "</text>\n";
  }
  std::ostringstream& raw() { return os_; }

 private:
  int size_;
  std::ostringstream os_;
};

Rat clamp01(const Rat& v) { return std::clamp(v, Rat(0), Rat(1)); }

}  // namespace

std::string render_svg(const PLGraph& g, const RenderOptions& opts) {
  const int side = opts.size + 2 * kMargin;
  Canvas c(opts.size);
  auto& os = c.raw();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
     << "\" viewBox=\"0 0 " << side << " " << side << "\">\n";
  if (!g.name.empty()) os << "<title>" << g.name << "</title>\n";
  c.rect(0, 0, 1, 1, "fill=\"white\" stroke=\"#888\" stroke-width=\"1\"");

  if (opts.frame) {
    const Frame& f = *opts.frame;
    const char* style = "fill-opacity=\"0.18\" stroke=\"none\"";
    auto band = [&](const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1, const char* color, const char* label) {
      if (x1 <= x0 || y1 <= y0) return;
      c.rect(x0, y0, x1, y1, std::string("fill=\"") + color + "\" " + style);
      c.text(midpoint(x0, x1), midpoint(y0, y1), label,
             "font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\"#444\"");
    };
    band(0, f.cod.hi, 1, 1, "#d62728", "T");
    band(0, 0, 1, f.cod.lo, "#1f77b4", "B");
    band(0, 0, f.dom.lo, 1, "#2ca02c", "L");
    band(f.dom.hi, 0, 1, 1, "#9467bd", "R");
    c.rect(clamp01(f.dom.lo - f.eps), clamp01(f.cod.lo - f.eps), clamp01(f.dom.hi + f.eps),
           clamp01(f.cod.hi + f.eps), "fill=\"none\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
    c.rect(f.dom.lo, f.cod.lo, f.dom.hi, f.cod.hi, "fill=\"#ffdd57\" fill-opacity=\"0.35\" stroke=\"#555\" stroke-width=\"1\"");
  }
  if (opts.strip)
    c.rect(opts.strip->lo, 0, opts.strip->hi, 1, "fill=\"#999\" fill-opacity=\"0.25\" stroke=\"none\"");

  std::vector<Seg> segs = g.segs;
  std::sort(segs.begin(), segs.end());
  for (const auto& s : segs) {
    if (s.degenerate()) {
      os << "<circle cx=\"" << c.x(s.p().x) << "\" cy=\"" << c.y(s.p().y) << "\" r=\"3\" fill=\"black\"/>\n";
      continue;
    }
    os << "<line x1=\"" << c.x(s.p().x) << "\" y1=\"" << c.y(s.p().y) << "\" x2=\"" << c.x(s.q().x) << "\" y2=\""
       << c.y(s.q().y) << "\" stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ivpkit
