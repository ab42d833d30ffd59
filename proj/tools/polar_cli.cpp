#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polar/harness.hpp"

namespace {

using polar::harness::ExperimentConfig;
using Applier = std::function<void(ExperimentConfig&)>;

// Flags are applied on top of the config file, and only when given.
class Overrides {
 public:
  explicit Overrides(CLI::App* app) : app_(app) {}

  template <class T, class Setter>
  CLI::Option* option(const std::string& name, const std::string& desc, Setter setter) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(name, *value, desc);
    appliers_.push_back([opt, value, setter](ExperimentConfig& cfg) {
      if (opt->count() > 0) setter(cfg, *value);
    });
    return opt;
  }

  template <class Setter>
  void flag(const std::string& name, const std::string& desc, Setter setter) {
    CLI::Option* opt = app_->add_flag(name, desc);
    appliers_.push_back([opt, setter](ExperimentConfig& cfg) {
      if (opt->count() > 0) setter(cfg);
    });
  }

  void apply(ExperimentConfig& cfg) const {
    for (const Applier& a : appliers_) a(cfg);
  }

 private:
  CLI::App* app_;
  std::vector<Applier> appliers_;
};

ExperimentConfig loadConfig(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path);
  if (!f) throw polar::Error(polar::Errc::Io, "cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw polar::Error(polar::Errc::InvalidArgument, "config '" + path + "': " + e.what());
  }
  return polar::harness::fromJson(j);
}

void addProblemOptions(Overrides& o) {
  o.option<int>("-n,--n", "matrix dimension", [](ExperimentConfig& c, int v) { c.n = v; });
  o.option<std::vector<double>>("--spectrum", "explicit singular values, nonincreasing",
                                [](ExperimentConfig& c, const std::vector<double>& v) { c.spectrum = v; })
      ->delimiter(',');
  o.option<double>("--cond", "condition number sigma_max / sigma_min",
                   [](ExperimentConfig& c, double v) { c.cond = v; });
  o.option<double>("--sigma-max", "largest singular value", [](ExperimentConfig& c, double v) { c.sigmaMax = v; });
  o.option<std::string>("--matrix", "read C from this file instead of generating it",
                        [](ExperimentConfig& c, const std::string& v) {
                          c.matrixPath = v;
                          // --matrix-format, applied after this, still wins.
                          const std::string ext = std::filesystem::path(v).extension().string();
                          c.matrixFormat = (ext == ".mtx" || ext == ".mm") ? polar::io::MatrixFormat::MatrixMarketArray
                                                                           : polar::io::MatrixFormat::CSV;
                        });
  o.option<std::string>("--matrix-format", "csv or mm", [](ExperimentConfig& c, const std::string& v) {
    c.matrixFormat = polar::io::parseMatrixFormat(v);
  });
  o.option<int>("--trials", "number of trials", [](ExperimentConfig& c, int v) { c.trials = v; });
  o.option<std::uint64_t>("--seed", "base random seed", [](ExperimentConfig& c, std::uint64_t v) { c.seed = v; });
  o.option<int>("-j,--jobs", "trials run concurrently", [](ExperimentConfig& c, int v) { c.jobs = v; });
}

void addSolverOptions(Overrides& o) {
  o.option<std::string>("--start", "identity, haar or tangent", [](ExperimentConfig& c, const std::string& v) {
    c.start.kind = polar::harness::parseStartKind(v);
  });
  o.option<double>("--radius", "spectral norm of the tangent start perturbation",
                   [](ExperimentConfig& c, double v) { c.start.radius = v; });
  o.option<std::string>("--step", "theorem, adaptive, practical or user",
                        [](ExperimentConfig& c, const std::string& v) {
                          c.step.mode = polar::harness::parseStepMode(v);
                        });
  o.option<double>("--eta", "step size for --step user", [](ExperimentConfig& c, double v) { c.step.eta = v; });
  o.option<double>("--grad-tol", "stop when ||grad f||_F falls to this",
                   [](ExperimentConfig& c, double v) { c.gradTol = v; });
  o.option<long>("--max-iters", "iteration cap", [](ExperimentConfig& c, long v) { c.maxIters = v; });
  o.flag("--no-oracle", "skip distances and envelopes in non-oracle step modes",
         [](ExperimentConfig& c) { c.trackOracle = false; });
}

void addCertifyOptions(Overrides& o) {
  o.option<int>("--certify-samples", "certificate sweep samples per trial",
                [](ExperimentConfig& c, int v) { c.certifySamples = v; });
  o.option<double>("--certify-radius", "largest sample radius, below pi",
                   [](ExperimentConfig& c, double v) { c.certifyRadius = v; });
}

void addOutputOptions(Overrides& o, bool svg) {
  o.option<std::string>("--csv", "CSV output path",
                        [](ExperimentConfig& c, const std::string& v) { c.outputs.csv = v; });
  o.option<std::string>("--json", "JSON summary path (default: stdout)",
                        [](ExperimentConfig& c, const std::string& v) { c.outputs.json = v; });
  if (svg) {
    o.option<std::string>("--svg", "SVG plot path",
                          [](ExperimentConfig& c, const std::string& v) { c.outputs.svg = v; });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar factor by Riemannian gradient descent on O(n)"};
  app.require_subcommand(1);
  std::string configPath;
  app.add_option("--config", configPath, "JSON experiment config; flags override it");

  CLI::App* solveCmd = app.add_subcommand("solve", "run RGD trials and check the convergence envelopes");
  CLI::App* certifyCmd = app.add_subcommand("certify", "sample the landscape inequalities");
  CLI::App* compareCmd = app.add_subcommand("compare", "RGD against the SVD and Newton baselines");
  CLI::App* genCmd = app.add_subcommand("gen", "write a generated matrix");
  for (CLI::App* sub : {solveCmd, certifyCmd, compareCmd, genCmd}) {
    sub->add_option("--config", configPath, "JSON experiment config; flags override it");
  }

  Overrides solveOpts(solveCmd);
  addProblemOptions(solveOpts);
  addSolverOptions(solveOpts);
  addCertifyOptions(solveOpts);
  addOutputOptions(solveOpts, true);

  Overrides certifyOpts(certifyCmd);
  addProblemOptions(certifyOpts);
  addCertifyOptions(certifyOpts);
  addOutputOptions(certifyOpts, false);

  Overrides compareOpts(compareCmd);
  addProblemOptions(compareOpts);
  addSolverOptions(compareOpts);
  addOutputOptions(compareOpts, false);
  compareOpts.flag("--timing", "record wall-clock seconds per method", [](ExperimentConfig& c) { c.timing = true; });

  Overrides genOpts(genCmd);
  addProblemOptions(genOpts);
  int genTrial = 0;
  std::string genOut;
  std::string genFormat = "csv";
  genCmd->add_option("--trial", genTrial, "trial index whose matrix to write");
  genCmd->add_option("-o,--out", genOut, "output path (default: stdout)");
  genCmd->add_option("--format", genFormat, "csv or mm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : polar::harness::kExitConfig;
  }

  try {
    ExperimentConfig cfg = loadConfig(configPath);
    if (*solveCmd) {
      solveOpts.apply(cfg);
      return polar::harness::runExperiment(cfg, std::cout, std::cerr);
    }
    if (*certifyCmd) {
      certifyOpts.apply(cfg);
      return polar::harness::runCertify(cfg, std::cout, std::cerr);
    }
    if (*compareCmd) {
      compareOpts.apply(cfg);
      return polar::harness::runCompare(cfg, std::cout, std::cerr);
    }
    genOpts.apply(cfg);
    return polar::harness::runGenerate(cfg, genTrial, genOut, polar::io::parseMatrixFormat(genFormat), std::cout,
                                       std::cerr);
  } catch (const polar::Error& e) {
    std::cerr << "polar-rgd: " << e.what() << "\n";
    return polar::harness::exitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "polar-rgd: " << e.what() << "\n";
    return polar::harness::kExitNumerical;
  }
}
