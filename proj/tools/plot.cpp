#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "cli.hpp"

namespace toricdvr::cli {

namespace {

struct Pt {
  double x, y;
};

constexpr const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                    "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

double cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Sutherland-Hodgman against an axis-aligned box.
std::vector<Pt> clip(std::vector<Pt> poly, double lo_x, double hi_x, double lo_y, double hi_y) {
  auto pass = [&](auto inside, auto meet) {
    std::vector<Pt> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pt& a = poly[i];
      const Pt& b = poly[(i + 1) % poly.size()];
      bool ia = inside(a), ib = inside(b);
      if (ia) out.push_back(a);
      if (ia != ib) out.push_back(meet(a, b));
    }
    poly = std::move(out);
  };
  auto at_x = [](double x) {
    return [x](const Pt& a, const Pt& b) { return Pt{x, a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)}; };
  };
  auto at_y = [](double y) {
    return [y](const Pt& a, const Pt& b) { return Pt{a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y), y}; };
  };
  pass([&](const Pt& p) { return p.x >= lo_x; }, at_x(lo_x));
  pass([&](const Pt& p) { return p.x <= hi_x; }, at_x(hi_x));
  pass([&](const Pt& p) { return p.y >= lo_y; }, at_y(lo_y));
  pass([&](const Pt& p) { return p.y <= hi_y; }, at_y(hi_y));
  return poly;
}

}  // namespace

std::string render_svg(const ToricBundleData& bundle, const PPClass& c1) {
  const PolyComplex& complex = bundle.complex();
  const std::size_t n = complex.n();
  if (n == 0 || n > 2) throw Error(ErrorCode::Unsupported, "plot supports torus rank 1 or 2");

  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& v : complex.vertices()) {
    lo_x = std::min(lo_x, double(v[0]));
    hi_x = std::max(hi_x, double(v[0]));
    if (n == 2) {
      lo_y = std::min(lo_y, double(v[1]));
      hi_y = std::max(hi_y, double(v[1]));
    }
  }
  lo_x -= 2;
  hi_x += 2;
  lo_y -= 2;
  hi_y += 2;
  if (n == 1) lo_y = -0.5, hi_y = 0.5;
  const double scale = 60, pad = 20;
  const double width = (hi_x - lo_x) * scale + 2 * pad;
  const double height = (hi_y - lo_y) * scale + 2 * pad + 40;
  auto sx = [&](double x) { return pad + (x - lo_x) * scale; };
  auto sy = [&](double y) { return pad + (hi_y - y) * scale; };

  // Piece of c1 on each maximal cell, read at its first vertex.
  std::map<std::string, std::size_t> colour_of;
  std::vector<std::string> labels;
  for (auto ci : complex.maximal_cells()) {
    const Cell& cell = complex.cells()[ci];
    std::size_t v = *complex.vertex_index(cell.vertices.front());
    const StarFan& star = c1.stars()[v];
    std::string label = "?";
    for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos)
      if (star.cell_of_maximal(pos) == ci) label = c1.piece(v, pos).to_string();
    colour_of.try_emplace(label, colour_of.size());
    labels.push_back(label);
  }

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::size_t k = 0;
  for (auto ci : complex.maximal_cells()) {
    const Cell& cell = complex.cells()[ci];
    const std::string& label = labels[k++];
    const char* fill = kPalette[colour_of[label] % std::size(kPalette)];
    std::vector<Pt> pts;
    for (const auto& v : cell.vertices) {
      Pt base{double(v[0]), n == 2 ? double(v[1]) : 0.0};
      pts.push_back(base);
      for (const auto& r : cell.rays) pts.push_back(Pt{base.x + 100 * r[0], base.y + (n == 2 ? 100.0 * r[1] : 0.0)});
    }
    double cx = 0, cy = 0;
    if (n == 1) {
      double a = std::max(lo_x, std::min_element(pts.begin(), pts.end(), [](auto& p, auto& q) { return p.x < q.x; })->x);
      double b = std::min(hi_x, std::max_element(pts.begin(), pts.end(), [](auto& p, auto& q) { return p.x < q.x; })->x);
      os << "<rect x=\"" << sx(a) << "\" y=\"" << sy(0.25) << "\" width=\"" << (b - a) * scale << "\" height=\""
         << 0.5 * scale << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
      cx = (a + b) / 2;
      cy = -0.4;
    } else {
      auto poly = clip(convex_hull(pts), lo_x, hi_x, lo_y, hi_y);
      if (poly.empty()) continue;
      os << "<polygon points=\"";
      for (const auto& p : poly) {
        os << sx(p.x) << "," << sy(p.y) << " ";
        cx += p.x / poly.size();
        cy += p.y / poly.size();
      }
      os << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
    }
    os << "<text x=\"" << sx(cx) << "\" y=\"" << sy(cy) << "\" font-size=\"12\" text-anchor=\"middle\">" << label
       << "</text>\n";
  }
  for (const auto& v : complex.vertices())
    os << "<circle cx=\"" << sx(double(v[0])) << "\" cy=\"" << sy(n == 2 ? double(v[1]) : 0.0)
       << "\" r=\"4\" fill=\"black\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"" << height - 12 << "\" font-size=\"13\">c1 pieces on the height-one complex, p = "
     << bundle.cfg().p() << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace toricdvr::cli
