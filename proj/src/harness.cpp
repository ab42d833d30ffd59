#include "polar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <thread>

#include "polar/trace_io.hpp"

namespace polar::harness {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void parallelFor(int count, int jobs, const std::function<void(int)>& body) {
  const int workers = std::clamp(jobs, 1, std::max(1, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void writeText(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw Error(Errc::Io, "failed writing '" + path + "'");
}

void emitSummary(const json& summary, const std::string& path, std::ostream& out) {
  const std::string text = summary.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    writeText(path, text);
  }
}

std::string errorText(const std::exception& e) { return e.what(); }

template <class T>
json optionalJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

double residualToStar(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x) {
  return (x.matrix() - p.xStar().matrix()).norm();
}

}  // namespace

std::string startKindName(solver::StartKind kind) {
  switch (kind) {
    case solver::StartKind::SignCorrectedIdentity: return "identity";
    case solver::StartKind::HaarSameComponent: return "haar";
    case solver::StartKind::TangentPerturbation: return "tangent";
  }
  return "unknown";
}

solver::StartKind parseStartKind(const std::string& name) {
  if (name == "identity") return solver::StartKind::SignCorrectedIdentity;
  if (name == "haar") return solver::StartKind::HaarSameComponent;
  if (name == "tangent") return solver::StartKind::TangentPerturbation;
  throw Error(Errc::InvalidArgument, "unknown start strategy '" + name + "' (identity, haar, tangent)");
}

solver::StepMode parseStepMode(const std::string& name) {
  for (solver::StepMode m : {solver::StepMode::TheoremFixed, solver::StepMode::AdaptiveA,
                             solver::StepMode::PracticalFixed, solver::StepMode::UserFixed}) {
    if (name == solver::stepModeName(m)) return m;
  }
  throw Error(Errc::InvalidArgument, "unknown step policy '" + name + "' (theorem, adaptive, practical, user)");
}

void validate(const ExperimentConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(Errc::InvalidArgument, msg); };
  if (cfg.matrixPath.empty()) {
    if (cfg.n < 1) bad("n must be at least 1");
    if (!cfg.spectrum.empty()) {
      if (static_cast<int>(cfg.spectrum.size()) != cfg.n) bad("spectrum must have n entries");
      for (std::size_t i = 0; i < cfg.spectrum.size(); ++i) {
        const double s = cfg.spectrum[i];
        if (!std::isfinite(s) || s < 0.0) bad("spectrum entries must be finite and nonnegative");
        if (i > 0 && s > cfg.spectrum[i - 1]) bad("spectrum must be nonincreasing");
      }
      if (cfg.spectrum.front() == 0.0) bad("spectrum must not be all zero");
    } else {
      if (!std::isfinite(cfg.cond) || cfg.cond < 1.0) bad("cond must be finite and at least 1");
      if (!std::isfinite(cfg.sigmaMax) || !(cfg.sigmaMax > 0.0)) bad("sigma-max must be positive");
    }
  }
  if (cfg.trials < 1) bad("trials must be at least 1");
  if (cfg.start.kind == solver::StartKind::TangentPerturbation &&
      !(cfg.start.radius >= 0.0 && cfg.start.radius < kPi)) {
    bad("radius must lie in [0, pi)");
  }
  if (cfg.step.mode == solver::StepMode::UserFixed && !(cfg.step.eta > 0.0 && std::isfinite(cfg.step.eta))) {
    bad("step 'user' needs a positive eta");
  }
  if (cfg.gradTol && !(*cfg.gradTol > 0.0)) bad("grad-tol must be positive");
  if (cfg.maxIters < 0) bad("max-iters must be nonnegative");
  if (cfg.certifySamples < 0) bad("certify-samples must be nonnegative");
  if (!(cfg.certifyRadius >= 0.0 && cfg.certifyRadius < kPi)) bad("certify-radius must lie in [0, pi)");
  if (cfg.jobs < 1) bad("jobs must be at least 1");
}

json toJson(const ExperimentConfig& cfg) {
  json j;
  if (cfg.matrixPath.empty()) {
    j["n"] = cfg.n;
    if (cfg.spectrum.empty()) {
      j["cond"] = cfg.cond;
      j["sigma_max"] = cfg.sigmaMax;
    } else {
      j["spectrum"] = cfg.spectrum;
    }
  } else {
    j["matrix"] = cfg.matrixPath;
    j["matrix_format"] = cfg.matrixFormat == io::MatrixFormat::CSV ? "csv" : "mm";
  }
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["start"] = startKindName(cfg.start.kind);
  if (cfg.start.kind == solver::StartKind::TangentPerturbation) j["radius"] = cfg.start.radius;
  j["step"] = std::string(solver::stepModeName(cfg.step.mode));
  if (cfg.step.mode == solver::StepMode::UserFixed) j["eta"] = cfg.step.eta;
  j["grad_tol"] = optionalJson(cfg.gradTol);
  j["max_iters"] = cfg.maxIters;
  j["track_oracle"] = cfg.trackOracle;
  j["certify_samples"] = cfg.certifySamples;
  j["certify_radius"] = cfg.certifyRadius;
  return j;
}

ExperimentConfig fromJson(const json& j, ExperimentConfig base) {
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "n") base.n = v.get<int>();
      else if (key == "spectrum") base.spectrum = v.get<std::vector<double>>();
      else if (key == "cond") base.cond = v.get<double>();
      else if (key == "sigma_max") base.sigmaMax = v.get<double>();
      else if (key == "matrix") base.matrixPath = v.get<std::string>();
      else if (key == "matrix_format") base.matrixFormat = io::parseMatrixFormat(v.get<std::string>());
      else if (key == "trials") base.trials = v.get<int>();
      else if (key == "seed") base.seed = v.get<std::uint64_t>();
      else if (key == "start") base.start.kind = parseStartKind(v.get<std::string>());
      else if (key == "radius") base.start.radius = v.get<double>();
      else if (key == "step") base.step.mode = parseStepMode(v.get<std::string>());
      else if (key == "eta") base.step.eta = v.get<double>();
      else if (key == "grad_tol") base.gradTol = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "max_iters") base.maxIters = v.get<long>();
      else if (key == "track_oracle") base.trackOracle = v.get<bool>();
      else if (key == "certify_samples") base.certifySamples = v.get<int>();
      else if (key == "certify_radius") base.certifyRadius = v.get<double>();
      else if (key == "jobs") base.jobs = v.get<int>();
      else if (key == "csv") base.outputs.csv = v.get<std::string>();
      else if (key == "json") base.outputs.json = v.get<std::string>();
      else if (key == "svg") base.outputs.svg = v.get<std::string>();
      else if (key == "timing") base.timing = v.get<bool>();
      else throw Error(Errc::InvalidArgument, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("config: ") + e.what());
  }
  return base;
}

std::vector<double> resolveSpectrum(const ExperimentConfig& cfg) {
  if (!cfg.spectrum.empty()) return cfg.spectrum;
  std::vector<double> s(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) {
    const double frac = cfg.n == 1 ? 0.0 : static_cast<double>(i) / (cfg.n - 1);
    s[static_cast<std::size_t>(i)] = cfg.sigmaMax * std::pow(cfg.cond, -frac);
  }
  if (cfg.n > 1) s.back() = cfg.sigmaMax / cfg.cond;
  return s;
}

Matrix generateMatrix(const ExperimentConfig& cfg, int trial) {
  const std::vector<double> s = resolveSpectrum(cfg);
  const int n = static_cast<int>(s.size());
  Rng rng(deriveSeed(cfg.seed, static_cast<std::uint64_t>(trial)));
  const Matrix u = geometry::haarSample(n, rng).matrix();
  const Matrix v = geometry::haarSample(n, rng).matrix();
  const Vector sigma = Eigen::Map<const Vector>(s.data(), n);
  return u * sigma.asDiagonal() * v.transpose();
}

objective::ProcrustesProblem generateProblem(const ExperimentConfig& cfg, int trial) {
  if (!cfg.matrixPath.empty()) return objective::ProcrustesProblem(io::ingestMatrix(cfg.matrixPath, cfg.matrixFormat));
  return objective::ProcrustesProblem(generateMatrix(cfg, trial));
}

std::uint64_t startSeed(const ExperimentConfig& cfg, int trial) {
  return deriveSeed(deriveSeed(cfg.seed, static_cast<std::uint64_t>(trial)), 1);
}

std::uint64_t certificateSeed(const ExperimentConfig& cfg, int trial) {
  return deriveSeed(deriveSeed(cfg.seed, static_cast<std::uint64_t>(trial)), 2);
}

std::vector<SolveTrial> solveTrials(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<SolveTrial> out(static_cast<std::size_t>(cfg.trials));
  parallelFor(cfg.trials, cfg.jobs, [&](int i) {
    SolveTrial& tr = out[static_cast<std::size_t>(i)];
    tr.trial = i;
    try {
      tr.problem.emplace(generateProblem(cfg, i));
      const objective::ProcrustesProblem& p = *tr.problem;
      const OrthogonalMatrix x0 = solver::coldStart(p, cfg.start, startSeed(cfg, i));
      solver::SolveOptions opts;
      opts.gradTol = cfg.gradTol;
      opts.maxIters = cfg.maxIters;
      opts.trackOracle = cfg.trackOracle;
      tr.result.emplace(solver::solve(p, x0, cfg.step, opts));
      tr.violation = solver::findEnvelopeViolation(tr.result->trace, p.singular());
      if (cfg.certifySamples > 0) {
        tr.certificates = certificates::certificateSweep(p, cfg.certifySamples, cfg.certifyRadius,
                                                         certificateSeed(cfg, i));
        tr.certificateFailures = certificates::countFailures(tr.certificates);
      }
    } catch (const std::exception& e) {
      tr.error = errorText(e);
    }
  });
  return out;
}

std::vector<CertifyTrial> certifyTrials(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<CertifyTrial> out(static_cast<std::size_t>(cfg.trials));
  const int samples = cfg.certifySamples > 0 ? cfg.certifySamples : 100;
  parallelFor(cfg.trials, cfg.jobs, [&](int i) {
    CertifyTrial& tr = out[static_cast<std::size_t>(i)];
    tr.trial = i;
    try {
      const objective::ProcrustesProblem p = generateProblem(cfg, i);
      tr.n = p.dimension();
      tr.singular = p.singular();
      tr.reports = certificates::certificateSweep(p, samples, cfg.certifyRadius, certificateSeed(cfg, i));
      tr.failures = certificates::countFailures(tr.reports);
    } catch (const std::exception& e) {
      tr.error = errorText(e);
    }
  });
  return out;
}

std::vector<CompareTrial> compareTrials(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<CompareTrial> out(static_cast<std::size_t>(cfg.trials));
  parallelFor(cfg.trials, cfg.jobs, [&](int i) {
    CompareTrial& tr = out[static_cast<std::size_t>(i)];
    tr.trial = i;
    try {
      const objective::ProcrustesProblem p = generateProblem(cfg, i);
      baselines::RgdConfig rgd;
      rgd.policy = cfg.step;
      rgd.options.gradTol = cfg.gradTol;
      rgd.options.maxIters = cfg.maxIters;
      rgd.options.trackOracle = cfg.trackOracle;
      rgd.start = cfg.start;
      rgd.seed = startSeed(cfg, i);
      tr.record.emplace(baselines::compareSolvers(p.C(), rgd));
    } catch (const std::exception& e) {
      tr.error = errorText(e);
    }
  });
  return out;
}

std::string solveCsv(const std::vector<SolveTrial>& trials) {
  std::vector<io::TrialTrace> traces;
  for (const SolveTrial& t : trials) {
    if (t.result) traces.push_back({t.trial, &t.result->trace});
  }
  return io::formatTraceCsv(traces);
}

namespace {

// Data-row offsets of each trial in the trace CSV.
std::vector<std::size_t> csvOffsets(const std::vector<SolveTrial>& trials) {
  std::vector<std::size_t> offsets;
  std::size_t acc = 0;
  for (const SolveTrial& t : trials) {
    offsets.push_back(acc);
    if (t.result) acc += t.result->trace.rows.size();
  }
  return offsets;
}

}  // namespace

json solveSummary(const ExperimentConfig& cfg, const std::vector<SolveTrial>& trials) {
  json j;
  j["command"] = "solve";
  j["config"] = toJson(cfg);
  json arr = json::array();
  std::size_t certFailures = 0;
  std::size_t violations = 0;
  std::size_t failedTrials = 0;
  const std::vector<std::size_t> offsets = csvOffsets(trials);
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const SolveTrial& t = trials[k];
    json e;
    e["trial"] = t.trial;
    if (!t.error.empty()) {
      e["error"] = t.error;
      ++failedTrials;
      arr.push_back(e);
      continue;
    }
    const objective::ProcrustesProblem& p = *t.problem;
    const solver::SolveResult& r = *t.result;
    const solver::TraceRow& last = r.trace.rows.back();
    e["n"] = p.dimension();
    e["singular"] = p.singular();
    e["L"] = p.L();
    e["sigma_min"] = p.sigmaMin();
    e["eta"] = last.eta;
    e["iterations"] = r.iterations;
    e["termination"] = std::string(solver::terminationName(r.termination));
    e["final_f_gap"] = last.fGap;
    e["final_grad_norm"] = last.gradNorm;
    e["final_dist_to_star"] = optionalJson(last.distToStar);
    e["final_residual_to_star"] = residualToStar(p, r.xFinal);
    e["d0"] = r.trace.envelope ? json(r.trace.envelope->d0) : json(nullptr);
    e["representative_x_star"] = r.trace.representativeDistance;
    if (t.violation) {
      ++violations;
      e["envelope_violation"] = {{"envelope", std::string(t.violation->envelope)},
                                 {"csv_row", offsets[k] + t.violation->row},
                                 {"t", t.violation->t},
                                 {"observed", t.violation->observed},
                                 {"bound", t.violation->bound}};
    } else {
      e["envelope_violation"] = nullptr;
    }
    if (cfg.certifySamples > 0) {
      e["certificate_reports"] = t.certificates.size();
      e["certificate_failures"] = t.certificateFailures;
    }
    certFailures += t.certificateFailures;
    arr.push_back(e);
  }
  j["trials"] = arr;
  j["envelope_violations"] = violations;
  j["certificate_failures"] = certFailures;
  j["failed_trials"] = failedTrials;
  return j;
}

std::string solveSvg(const ExperimentConfig& cfg, const std::vector<SolveTrial>& trials) {
  std::vector<io::PlotSeries> series;
  bool anySingular = false;
  bool anyRegular = false;
  for (const SolveTrial& t : trials) {
    if (!t.result) continue;
    const bool singular = t.problem->singular();
    (singular ? anySingular : anyRegular) = true;
    for (io::PlotSeries& s : io::trialSeries(t.trial, t.result->trace, singular)) series.push_back(std::move(s));
  }
  std::string yLabel = "dist^2(X_t, X*)";
  if (anySingular && anyRegular) yLabel = "dist^2 or f-gap";
  else if (anySingular || !cfg.trackOracle) yLabel = "f(X_t) - f*";
  const std::string title = "RGD on O(" + (cfg.matrixPath.empty() ? std::to_string(cfg.n) : std::string("n")) +
                            "), step " + std::string(solver::stepModeName(cfg.step.mode));
  return io::renderConvergenceSvg(series, title, yLabel);
}

std::string certifyCsv(const std::vector<CertifyTrial>& trials) {
  std::string out = "trial,index,kind,sample,lhs,rhs,slack,passed,vacuous\n";
  for (const CertifyTrial& t : trials) {
    for (std::size_t i = 0; i < t.reports.size(); ++i) {
      const certificates::CertificateReport& r = t.reports[i];
      out += std::to_string(t.trial) + ',' + std::to_string(i) + ',' + std::string(certificates::kindName(r.kind)) +
             ',' + csvField(r.samplePoint) + ',' + io::formatNumber(r.lhs) + ',' + io::formatNumber(r.rhs) + ',' +
             io::formatNumber(r.slack) + ',' + (r.passed ? '1' : '0') + ',' + (r.vacuous ? '1' : '0') + '\n';
    }
  }
  return out;
}

json certifySummary(const ExperimentConfig& cfg, const std::vector<CertifyTrial>& trials) {
  json j;
  j["command"] = "certify";
  j["config"] = toJson(cfg);
  json arr = json::array();
  std::size_t failures = 0;
  for (const CertifyTrial& t : trials) {
    json e;
    e["trial"] = t.trial;
    if (!t.error.empty()) {
      e["error"] = t.error;
      arr.push_back(e);
      continue;
    }
    e["n"] = t.n;
    e["singular"] = t.singular;
    e["reports"] = t.reports.size();
    e["failures"] = t.failures;
    double worst = std::numeric_limits<double>::infinity();
    for (const certificates::CertificateReport& r : t.reports) worst = std::min(worst, r.slack);
    e["min_slack"] = t.reports.empty() ? json(nullptr) : json(worst);
    failures += t.failures;
    arr.push_back(e);
  }
  j["trials"] = arr;
  j["certificate_failures"] = failures;
  return j;
}

std::string compareCsv(const std::vector<CompareTrial>& trials, bool timing) {
  std::string out = "trial,n,singular,method,included,iterations,residual_to_star,f_gap,wall_seconds,note\n";
  for (const CompareTrial& t : trials) {
    if (!t.record) continue;
    for (const baselines::MethodOutcome& o : t.record->outcomes) {
      out += std::to_string(t.trial) + ',' + std::to_string(t.record->n) + ',' + (t.record->singular ? '1' : '0') +
             ',' + o.method + ',' + (o.included ? '1' : '0') + ',';
      if (o.included) {
        out += std::to_string(o.iterations) + ',' + io::formatNumber(o.residualToStar) + ',' +
               io::formatNumber(o.fGap) + ',';
      } else {
        out += ",,,";
      }
      if (timing && o.included) out += io::formatNumber(o.wallSeconds);
      out += ',' + csvField(o.note) + '\n';
    }
  }
  return out;
}

json compareSummary(const ExperimentConfig& cfg, const std::vector<CompareTrial>& trials) {
  json j;
  j["command"] = "compare";
  j["config"] = toJson(cfg);
  json arr = json::array();
  for (const CompareTrial& t : trials) {
    json e;
    e["trial"] = t.trial;
    if (!t.record) {
      e["error"] = t.error;
      arr.push_back(e);
      continue;
    }
    e["n"] = t.record->n;
    e["singular"] = t.record->singular;
    json methods = json::array();
    for (const baselines::MethodOutcome& o : t.record->outcomes) {
      json m{{"method", o.method}, {"included", o.included}, {"note", o.note}};
      if (o.included) {
        m["iterations"] = o.iterations;
        m["residual_to_star"] = o.residualToStar;
        m["f_gap"] = o.fGap;
        if (cfg.timing) m["wall_seconds"] = o.wallSeconds;
      }
      methods.push_back(m);
    }
    e["methods"] = methods;
    arr.push_back(e);
  }
  j["trials"] = arr;
  return j;
}

OutputPaths defaultOutputs(const OutputPaths& given, const std::string& stem) {
  OutputPaths out = given;
  const char* dir = std::getenv("POLAR_RGD_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return out;
  const std::filesystem::path base(dir);
  if (out.csv.empty()) out.csv = (base / (stem + ".csv")).string();
  if (out.json.empty()) out.json = (base / (stem + ".json")).string();
  if (out.svg.empty()) out.svg = (base / (stem + ".svg")).string();
  return out;
}

int exitCodeFor(const Error& e) {
  switch (e.code()) {
    case Errc::Io: return kExitIo;
    case Errc::InvalidArgument:
    case Errc::ParseError:
    case Errc::NotSquare:
    case Errc::NonFiniteInput:
    case Errc::ZeroMatrix: return kExitConfig;
    default: return kExitNumerical;
  }
}

namespace {

// A bad input file is a configuration error, not a per-trial failure.
void checkMatrixInput(const ExperimentConfig& cfg) {
  if (!cfg.matrixPath.empty()) generateProblem(cfg, 0);
}

}  // namespace

int runExperiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  checkMatrixInput(cfg);
  const OutputPaths paths = defaultOutputs(cfg.outputs, "solve");
  const std::vector<SolveTrial> trials = solveTrials(cfg);
  const std::vector<std::size_t> offsets = csvOffsets(trials);

  int code = kExitOk;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const SolveTrial& t = trials[k];
    if (!t.error.empty()) {
      err << "trial " << t.trial << ": " << t.error << "\n";
      code = kExitNumerical;
      continue;
    }
    if (t.violation) {
      err << "trial " << t.trial << ": " << t.violation->envelope << " envelope violated at csv row "
          << offsets[k] + t.violation->row << " (t = " << t.violation->t
          << "): observed " << io::formatNumber(t.violation->observed) << " > bound "
          << io::formatNumber(t.violation->bound) << "\n";
      code = kExitNumerical;
    }
    if (t.certificateFailures > 0) {
      err << "trial " << t.trial << ": " << t.certificateFailures << " certificate failures\n";
      code = kExitNumerical;
    }
  }

  if (!paths.csv.empty()) writeText(paths.csv, solveCsv(trials));
  if (!paths.svg.empty()) writeText(paths.svg, solveSvg(cfg, trials));
  emitSummary(solveSummary(cfg, trials), paths.json, out);
  return code;
}

int runCertify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  checkMatrixInput(cfg);
  const OutputPaths paths = defaultOutputs(cfg.outputs, "certify");
  const std::vector<CertifyTrial> trials = certifyTrials(cfg);
  int code = kExitOk;
  for (const CertifyTrial& t : trials) {
    if (!t.error.empty()) {
      err << "trial " << t.trial << ": " << t.error << "\n";
      code = kExitNumerical;
      continue;
    }
    for (std::size_t i = 0; i < t.reports.size(); ++i) {
      const certificates::CertificateReport& r = t.reports[i];
      if (r.passed) continue;
      err << "trial " << t.trial << ": " << certificates::kindName(r.kind) << " failed at report " << i << " ("
          << r.samplePoint << "), slack " << io::formatNumber(r.slack) << "\n";
      code = kExitNumerical;
    }
  }
  if (!paths.csv.empty()) writeText(paths.csv, certifyCsv(trials));
  emitSummary(certifySummary(cfg, trials), paths.json, out);
  return code;
}

int runCompare(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  checkMatrixInput(cfg);
  const OutputPaths paths = defaultOutputs(cfg.outputs, "compare");
  const std::vector<CompareTrial> trials = compareTrials(cfg);
  int code = kExitOk;
  for (const CompareTrial& t : trials) {
    if (!t.record) {
      err << "trial " << t.trial << ": " << t.error << "\n";
      code = kExitNumerical;
    }
  }
  if (!paths.csv.empty()) writeText(paths.csv, compareCsv(trials, cfg.timing));
  emitSummary(compareSummary(cfg, trials), paths.json, out);
  return code;
}

int runGenerate(const ExperimentConfig& cfg, int trial, const std::string& path, io::MatrixFormat format,
                std::ostream& out, std::ostream& /*err*/) {
  validate(cfg);
  if (trial < 0) throw Error(Errc::InvalidArgument, "trial index must be nonnegative");
  const Matrix c = generateProblem(cfg, trial).C();
  if (path.empty()) {
    out << io::formatMatrix(c, format);
  } else {
    writeText(path, io::formatMatrix(c, format));
  }
  return kExitOk;
}

}  // namespace polar::harness
