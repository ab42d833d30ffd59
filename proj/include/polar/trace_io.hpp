#pragma once

#include <string>
#include <vector>

#include "polar/solver.hpp"

namespace polar::io {

inline constexpr const char* kTraceCsvHeader =
    "trial,t,eta,f_gap,grad_norm,dist_to_star,linear_envelope,sublinear_envelope,a_of_x,near_antipodal";

struct TrialTrace {
  int trial = 0;
  const solver::SolveTrace* trace = nullptr;
};

/// Header plus one row per iteration, trials in the given order. Undefined
/// metrics are empty cells.
std::string formatTraceCsv(const std::vector<TrialTrace>& traces);

/// One curve (observed or envelope) on the convergence plot.
struct PlotSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> y;
  bool dashed = false;
  int colorIndex = 0;
};

/// Self-contained SVG with a log10 y axis. Nonpositive and non-finite values
/// are left out of the curves.
std::string renderConvergenceSvg(const std::vector<PlotSeries>& series, const std::string& title,
                                 const std::string& yLabel);

/// Observed metric and matching envelope for one trial: dist^2 against the
/// linear envelope for invertible C, f-gap against the sublinear one otherwise.
std::vector<PlotSeries> trialSeries(int trial, const solver::SolveTrace& trace, bool singular);

}  // namespace polar::io
