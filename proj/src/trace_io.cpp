#include "polar/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "polar/matrix_io.hpp"

namespace polar::io {

namespace {

std::string cell(const std::optional<double>& v) { return v ? formatNumber(*v) : std::string(); }

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
constexpr int kPaletteSize = 8;
constexpr std::size_t kMaxPointsPerSeries = 1000;
constexpr double kMaxDecades = 40.0;

}  // namespace

std::string formatTraceCsv(const std::vector<TrialTrace>& traces) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const TrialTrace& tt : traces) {
    for (const solver::TraceRow& r : tt.trace->rows) {
      out += std::to_string(tt.trial) + ',' + std::to_string(r.t) + ',' + formatNumber(r.eta) + ',' +
             formatNumber(r.fGap) + ',' + formatNumber(r.gradNorm) + ',' + cell(r.distToStar) + ',' +
             cell(r.linearEnvelope) + ',' + cell(r.sublinearEnvelope) + ',' + cell(r.aOfX) + ',';
      if (tt.trace->oracle) out += r.nearAntipodal ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::vector<PlotSeries> trialSeries(int trial, const solver::SolveTrace& trace, bool singular) {
  PlotSeries observed;
  PlotSeries envelope;
  const bool useDistance = !singular && trace.oracle;
  observed.label = "trial " + std::to_string(trial) + (useDistance ? " dist^2" : " f-gap");
  envelope.label = "trial " + std::to_string(trial) + (useDistance ? " linear envelope" : " sublinear envelope");
  observed.colorIndex = envelope.colorIndex = trial % kPaletteSize;
  envelope.dashed = true;
  for (const solver::TraceRow& r : trace.rows) {
    const double td = static_cast<double>(r.t);
    if (useDistance) {
      if (r.distToStar) {
        observed.t.push_back(td);
        observed.y.push_back(*r.distToStar * *r.distToStar);
      }
      if (r.linearEnvelope) {
        envelope.t.push_back(td);
        envelope.y.push_back(*r.linearEnvelope);
      }
    } else {
      observed.t.push_back(td);
      observed.y.push_back(r.fGap);
      if (r.sublinearEnvelope) {
        envelope.t.push_back(td);
        envelope.y.push_back(*r.sublinearEnvelope);
      }
    }
  }
  std::vector<PlotSeries> out{std::move(observed)};
  if (!envelope.t.empty()) out.push_back(std::move(envelope));
  return out;
}

std::string renderConvergenceSvg(const std::vector<PlotSeries>& series, const std::string& title,
                                 const std::string& yLabel) {
  constexpr double width = 800.0;
  constexpr double height = 500.0;
  constexpr double left = 80.0;
  constexpr double right = 220.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  const double plotW = width - left - right;
  const double plotH = height - top - bottom;

  double tMax = 1.0;
  double yLo = std::numeric_limits<double>::infinity();
  double yHi = -std::numeric_limits<double>::infinity();
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      tMax = std::max(tMax, s.t[i]);
      if (s.y[i] > 0.0 && std::isfinite(s.y[i])) {
        yLo = std::min(yLo, std::log10(s.y[i]));
        yHi = std::max(yHi, std::log10(s.y[i]));
      }
    }
  }
  if (!std::isfinite(yLo)) {
    yLo = -1.0;
    yHi = 1.0;
  }
  yHi = std::ceil(yHi);
  yLo = std::floor(std::max(yLo, yHi - kMaxDecades));
  if (yHi <= yLo) yHi = yLo + 1.0;

  auto px = [&](double t) { return left + plotW * t / tMax; };
  auto py = [&](double logy) { return top + plotH * (yHi - logy) / (yHi - yLo); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(left) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(plotW) + "\" height=\"" +
         fixed(plotH) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const int decades = static_cast<int>(yHi - yLo);
  const int decadeStep = std::max(1, decades / 10);
  for (int e = static_cast<int>(yLo); e <= static_cast<int>(yHi); e += decadeStep) {
    const double y = py(e);
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left + plotW) + "\" y2=\"" +
           fixed(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" + std::to_string(e) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double t = tMax * k / 5.0;
    svg += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(top + plotH + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           std::to_string(static_cast<long>(std::llround(t))) + "</text>\n";
  }
  svg += "<text x=\"" + fixed(left + plotW / 2) + "\" y=\"" + fixed(height - 16) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">iteration t</text>\n";
  svg += "<text x=\"16\" y=\"" + fixed(top + plotH / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fixed(top + plotH / 2) + ")\">" + yLabel + "</text>\n";

  int legendRow = 0;
  for (const PlotSeries& s : series) {
    const std::string color = kPalette[((s.colorIndex % kPaletteSize) + kPaletteSize) % kPaletteSize];
    const std::size_t stride = std::max<std::size_t>(1, (s.t.size() + kMaxPointsPerSeries - 1) / kMaxPointsPerSeries);
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
               (s.dashed ? std::string(" stroke-dasharray=\"6 4\"") : std::string()) + " points=\"" + points +
               "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (i % stride != 0 && i + 1 != s.t.size()) continue;
      const double y = s.y[i];
      if (!(y > 0.0) || !std::isfinite(y) || std::log10(y) < yLo) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fixed(px(s.t[i])) + ',' + fixed(py(std::log10(y)));
    }
    flush();

    if (legendRow < 24) {
      const double ly = top + 12 + 16 * legendRow;
      const double lx = left + plotW + 12;
      svg += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" + fixed(ly) +
             "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
             (s.dashed ? std::string(" stroke-dasharray=\"6 4\"") : std::string()) + "/>\n";
      svg += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
      ++legendRow;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace polar::io
