#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

// Minimal SVG line plots for the figure exports: axes, ticks, one polyline
// per curve, a text legend. Convenience output; the CSVs are the contract.

namespace torcli {

struct Curve {
  std::string label;
  std::vector<double> x, y;
};

inline void write_svg(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Curve>& curves, bool equal_axes = false) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const double W = 800, H = 600, ml = 70, mr = 150, mt = 50, mb = 60;

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const Curve& c : curves) {
    for (double v : c.x) {
      x0 = std::min(x0, v);
      x1 = std::max(x1, v);
    }
    for (double v : c.y) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  if (equal_axes) {
    const double span = std::max(x1 - x0, y1 - y0);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - 0.55 * span;
    x1 = cx + 0.55 * span;
    y0 = cy - 0.55 * span;
    y1 = cy + 0.55 * span;
  } else {
    const double px = 0.04 * (x1 - x0), py = 0.04 * (y1 - y0);
    x0 -= px;
    x1 += px;
    y0 -= py;
    y1 += py;
  }

  auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto sy = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

  std::ofstream out(path, std::ios::binary);
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
         "font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.0f\" y=\"28\" font-size=\"17\">%s</text>\n", ml, title.c_str());
  out << buf;

  // Axes with five ticks per side.
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, H - mb, W - mr, H - mb);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, mt, ml, H - mb);
  out << buf;
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.3g</text>\n",
                  sx(fx), H - mb + 20, fx);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n", ml - 8,
                  sy(fy) + 4, fy);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                  sx(fx), mt, sx(fx), H - mb);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                  ml, sy(fy), W - mr, sy(fy));
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                (ml + W - mr) / 2, H - 15, x_label.c_str());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"18\" y=\"%.1f\" transform=\"rotate(-90 18 %.1f)\" "
                "text-anchor=\"middle\">%s</text>\n",
                (mt + H - mb) / 2, (mt + H - mb) / 2, y_label.c_str());
  out << buf;

  for (size_t k = 0; k < curves.size(); ++k) {
    const char* color = kColors[k % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < curves[k].x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(curves[k].x[i]), sy(curves[k].y[i]));
      out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">%s</text>\n", W - mr + 10,
                  mt + 20.0 + 18.0 * k, color, curves[k].label.c_str());
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace torcli
