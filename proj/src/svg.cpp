#include "bso/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "bso/errors.hpp"

namespace bso {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// 1-2-5 ladder tick step covering roughly five intervals
double nice_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  return step * mag;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
};

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series, int width,
                    int height) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");

  Bounds bx, by;
  for (const auto& s : series) {
    for (double v : *s.x) bx.add(v);
    for (double v : *s.y) by.add(v);
  }
  bx.pad();
  by.pad();

  const double ml = 70, mr = 20, mt = 36, mb = 52;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  auto px = [&](double x) { return ml + pw * (x - bx.lo) / (bx.hi - bx.lo); };
  auto py = [&](double y) { return mt + ph * (by.hi - y) / (by.hi - by.lo); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // grid and tick labels
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const double sx = nice_step(bx.hi - bx.lo);
  for (double x = std::ceil(bx.lo / sx) * sx; x <= bx.hi + 1e-12 * sx; x += sx) {
    const double gx = px(x);
    out << "<line x1=\"" << fmt(gx, "%.2f") << "\" y1=\"" << mt << "\" x2=\""
        << fmt(gx, "%.2f") << "\" y2=\"" << mt + ph
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(gx, "%.2f") << "\" y=\"" << mt + ph + 16
        << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
  }
  const double sy = nice_step(by.hi - by.lo);
  for (double y = std::ceil(by.lo / sy) * sy; y <= by.hi + 1e-12 * sy; y += sy) {
    const double gy = py(y);
    out << "<line x1=\"" << ml << "\" y1=\"" << fmt(gy, "%.2f") << "\" x2=\""
        << ml + pw << "\" y2=\"" << fmt(gy, "%.2f")
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << fmt(gy + 4, "%.2f")
        << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "</g>\n";

  // axes
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  // data
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.x->size(); ++i)
      out << fmt(px((*s.x)[i]), "%.2f") << "," << fmt(py((*s.y)[i]), "%.2f")
          << " ";
    out << "\"/>\n";
  }

  // legend
  double ly = mt + 16;
  for (const auto& s : series) {
    out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << ml + pw - 120 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
        << "</text>\n";
    ly += 16;
  }

  out << "</svg>\n";
}

}  // namespace bso
