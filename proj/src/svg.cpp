#include "metasurf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace metasurf {

namespace {

constexpr int kW = 720, kH = 480;
constexpr int kMargin = 60;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Mapper {
  double xmin, xmax, ymin, ymax;
  double px(double x) const {
    return kMargin + (x - xmin) / (xmax - xmin) * (kW - 2 * kMargin);
  }
  double py(double y) const {
    return kH - kMargin - (y - ymin) / (ymax - ymin) * (kH - 2 * kMargin);
  }
};

void header(std::ofstream& f) {
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ofstream& f, const Mapper& m, const std::string& title,
          const std::string& xlabel, const std::string& ylabel) {
  f << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
    << kW - 2 * kMargin << "\" height=\"" << kH - 2 * kMargin
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = m.xmin + (m.xmax - m.xmin) * i / 4.0;
    const double y = m.ymin + (m.ymax - m.ymin) * i / 4.0;
    f << "<text x=\"" << num(m.px(x)) << "\" y=\"" << kH - kMargin + 18
      << "\" font-size=\"11\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    f << "<text x=\"" << kMargin - 8 << "\" y=\"" << num(m.py(y) + 4)
      << "\" font-size=\"11\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  f << "<text x=\"" << kW / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
    << title << "</text>\n";
  f << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 14
    << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  f << "<text x=\"16\" y=\"" << kH / 2
    << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kH / 2 << ")\">" << ylabel << "</text>\n";
}

void polyline(std::ofstream& f, const Mapper& m, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* color, bool close) {
  f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i)
    f << num(m.px(xs[i])) << ',' << num(m.py(ys[i])) << ' ';
  if (close && !xs.empty()) f << num(m.px(xs[0])) << ',' << num(m.py(ys[0]));
  f << "\"/>\n";
}

}  // namespace

void write_line_chart(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel) {
  if (xs.empty() || xs.size() != ys.size()) return;
  Mapper m{*std::min_element(xs.begin(), xs.end()),
           *std::max_element(xs.begin(), xs.end()),
           *std::min_element(ys.begin(), ys.end()),
           *std::max_element(ys.begin(), ys.end())};
  if (m.xmax == m.xmin) m.xmax = m.xmin + 1.0;
  if (m.ymax == m.ymin) m.ymax = m.ymin + 1.0;
  std::ofstream f(path, std::ios::binary);
  header(f);
  axes(f, m, title, xlabel, ylabel);
  polyline(f, m, xs, ys, "#1f6fb2", false);
  f << "</svg>\n";
}

void write_boundary_chart(const std::string& path, const ParticleBoundary& before,
                          const ParticleBoundary& after) {
  const double ymax =
      std::max(before.points.col(1).maxCoeff(), after.points.col(1).maxCoeff());
  Mapper m{-0.5, 0.5, 0.0, std::max(1.0, ymax + 0.1)};
  std::ofstream f(path, std::ios::binary);
  header(f);
  axes(f, m, "boundary before/after", "x1", "x2");
  auto draw = [&](const ParticleBoundary& b, const char* color) {
    for (const auto& c : b.components) {
      std::vector<double> xs, ys;
      for (int i = c.begin; i < c.end; ++i) {
        xs.push_back(b.points(i, 0));
        ys.push_back(b.points(i, 1));
      }
      polyline(f, m, xs, ys, color, true);
    }
  };
  draw(before, "#999999");
  draw(after, "#c23b22");
  f << "</svg>\n";
}

}  // namespace metasurf
