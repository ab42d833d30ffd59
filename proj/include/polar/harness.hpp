#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/baselines.hpp"
#include "polar/certificates.hpp"
#include "polar/matrix_io.hpp"
#include "polar/solver.hpp"

namespace polar::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,  // envelope or certificate violation, failed trial
  kExitIo = 3,
};

struct OutputPaths {
  std::string csv;
  std::string json;
  std::string svg;
};

struct ExperimentConfig {
  int n = 2;
  /// Explicit singular values, nonincreasing. Empty: use cond and sigmaMax.
  std::vector<double> spectrum;
  double cond = 10.0;
  double sigmaMax = 1.0;
  /// Read C from a file instead of generating it; n then comes from the file.
  std::string matrixPath;
  io::MatrixFormat matrixFormat = io::MatrixFormat::CSV;

  int trials = 1;
  std::uint64_t seed = 0;
  solver::StartStrategy start{solver::StartKind::TangentPerturbation, 1.0};
  solver::StepSizePolicy step = solver::StepSizePolicy::practical();
  std::optional<double> gradTol;
  long maxIters = 100000;
  bool trackOracle = true;

  int certifySamples = 0;  // solve: also run a certificate sweep when > 0
  double certifyRadius = 0.95 * std::numbers::pi;

  int jobs = 1;
  OutputPaths outputs;
  bool timing = false;  // compare: record wall time (makes output nondeterministic)
};

/// Throws InvalidArgument describing the first bad field.
void validate(const ExperimentConfig& cfg);

nlohmann::json toJson(const ExperimentConfig& cfg);

/// Overlays the keys present in `j` onto `base`. Unknown keys throw
/// InvalidArgument.
ExperimentConfig fromJson(const nlohmann::json& j, ExperimentConfig base = {});

std::string startKindName(solver::StartKind kind);
solver::StartKind parseStartKind(const std::string& name);
solver::StepMode parseStepMode(const std::string& name);

/// Singular values used for generated problems: the explicit spectrum, or
/// sigmaMax * cond^(-i/(n-1)), i = 0..n-1 (log-uniform between the ends).
std::vector<double> resolveSpectrum(const ExperimentConfig& cfg);

/// C = U diag(spectrum) V^T with Haar U, V drawn from the trial's own stream.
Matrix generateMatrix(const ExperimentConfig& cfg, int trial);

/// The matrix file when one is configured, otherwise generateMatrix.
objective::ProcrustesProblem generateProblem(const ExperimentConfig& cfg, int trial);

/// Per-trial seeds for the start point and the certificate sweep.
std::uint64_t startSeed(const ExperimentConfig& cfg, int trial);
std::uint64_t certificateSeed(const ExperimentConfig& cfg, int trial);

struct SolveTrial {
  int trial = 0;
  std::optional<objective::ProcrustesProblem> problem;
  std::optional<solver::SolveResult> result;
  std::optional<solver::EnvelopeViolation> violation;
  std::vector<certificates::CertificateReport> certificates;
  std::size_t certificateFailures = 0;
  std::string error;  // set when the trial threw
};

struct CertifyTrial {
  int trial = 0;
  int n = 0;
  bool singular = false;
  std::vector<certificates::CertificateReport> reports;
  std::size_t failures = 0;
  std::string error;
};

struct CompareTrial {
  int trial = 0;
  std::optional<baselines::ComparisonRecord> record;
  std::string error;
};

/// Trials run on up to cfg.jobs threads; results come back in trial order.
std::vector<SolveTrial> solveTrials(const ExperimentConfig& cfg);
std::vector<CertifyTrial> certifyTrials(const ExperimentConfig& cfg);
std::vector<CompareTrial> compareTrials(const ExperimentConfig& cfg);

std::string solveCsv(const std::vector<SolveTrial>& trials);
nlohmann::json solveSummary(const ExperimentConfig& cfg, const std::vector<SolveTrial>& trials);
std::string solveSvg(const ExperimentConfig& cfg, const std::vector<SolveTrial>& trials);

std::string certifyCsv(const std::vector<CertifyTrial>& trials);
nlohmann::json certifySummary(const ExperimentConfig& cfg, const std::vector<CertifyTrial>& trials);

std::string compareCsv(const std::vector<CompareTrial>& trials, bool timing);
nlohmann::json compareSummary(const ExperimentConfig& cfg, const std::vector<CompareTrial>& trials);

/// Fills empty output paths from the POLAR_RGD_OUTPUT_DIR environment
/// variable, if set, using the given file stem.
OutputPaths defaultOutputs(const OutputPaths& given, const std::string& stem);

/// Subcommand drivers. They validate, run, write the configured outputs (the
/// JSON summary goes to `out` when no JSON path is set) and return an ExitCode.
/// Diagnostics, including violated envelope rows, go to `err`.
int runExperiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int runCertify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int runCompare(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes generateProblem(cfg, trial).C() to `path` (or `out` when empty).
int runGenerate(const ExperimentConfig& cfg, int trial, const std::string& path, io::MatrixFormat format,
                std::ostream& out, std::ostream& err);

/// Maps an exception escaping a driver to an exit code.
int exitCodeFor(const Error& e);

}  // namespace polar::harness
