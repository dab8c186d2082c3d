// gsv: certificates and checks for GSV(r,s) = {(X,Y) : XY = I_r}.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "gsv/cli.hpp"

namespace {

int emit(const gsv::cli::Report& rep, const gsv::cli::RunConfig& cfg) {
  std::string text = cfg.json ? gsv::cli::toJson(rep, cfg.timing).dump(2) + "\n" : gsv::cli::toText(rep);
  if (cfg.outputPath) {
    std::ofstream out(*cfg.outputPath);
    if (!out) {
      std::cerr << "gsv: cannot write " << *cfg.outputPath << "\n";
      return gsv::cli::kUsageExit;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return gsv::cli::exitCode(rep.verdict);
}

} // namespace

int main(int argc, char** argv) {
  using namespace gsv::cli;
  RunConfig cfg;
  cfg.threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GSV_TIME_BUDGET")) cfg.timeBudgetSeconds = std::atoi(env);

  CLI::App app{"Symbolic checks for the generalised affine Stiefel variety GSV(r,s)"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string pairs = "all";
  auto common = [&](CLI::App* sub, bool needsR) {
    if (needsR) sub->add_option("--r", cfg.r, "rows of X")->required()->check(CLI::PositiveNumber);
    sub->add_option("--s", cfg.s, needsR ? "columns of X" : "upper bound on s")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for numeric cross-checks")->capture_default_str();
    sub->add_option("--samples", cfg.sampleCount, "random points per chart pair")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--time-budget", cfg.timeBudgetSeconds, "seconds before BUDGET_EXCEEDED");
  };
  auto output = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_flag("--timing", cfg.timing, "include elapsedMs in JSON");
    sub->add_option("--out", cfg.outputPath, "write the report to FILE");
  };

  auto* canonical = app.add_subcommand("canonical", "certify that the canonical divisor is trivial");
  common(canonical, true);
  canonical->add_option("--pairs", pairs, "chart pairs to certify")->check(CLI::IsMember({"adjacent", "all"}));
  output(canonical);

  auto* weights = app.add_subcommand("weights", "torus weights on the tangent space at the base point");
  weights->add_option("--r", cfg.r)->required()->check(CLI::PositiveNumber);
  weights->add_option("--s", cfg.s)->required()->check(CLI::PositiveNumber);
  output(weights);

  auto* orbit = app.add_subcommand("orbit", "membership, smoothness and orbit witness for a point");
  orbit->add_option("--point", cfg.pointFile, "Point JSON file")->required()->check(CLI::ExistingFile);
  output(orbit);

  auto* sweep = app.add_subcommand("sweep", "run all checks for 1 <= r <= s <= S");
  common(sweep, false);
  sweep->add_option("--pairs", pairs)->check(CLI::IsMember({"adjacent", "all"}));
  output(sweep);

  auto* atlas = app.add_subcommand("atlas", "chart atlas and adjacent transition maps");
  atlas->add_option("--r", cfg.r)->required()->check(CLI::PositiveNumber);
  atlas->add_option("--s", cfg.s)->required()->check(CLI::PositiveNumber);
  output(atlas);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }
  cfg.pairScope = pairs == "adjacent" ? gsv::PairScope::Adjacent : gsv::PairScope::All;
  if (cfg.sampleCount < 1) {
    std::cerr << "gsv: --samples must be at least 1\n";
    return kUsageExit;
  }

  try {
    if (*canonical) return emit(cmdCanonical(cfg), cfg);
    if (*weights) return emit(cmdWeights(cfg), cfg);
    if (*atlas) return emit(cmdAtlas(cfg), cfg);
    if (*sweep) return emit(cmdSweep(cfg), cfg);
    if (*orbit) {
      std::ifstream in(*cfg.pointFile);
      gsv::Json j;
      try {
        j = gsv::Json::parse(in);
      } catch (const gsv::Json::parse_error& e) {
        std::cerr << "gsv: " << *cfg.pointFile << ": " << e.what() << "\n";
        return kUsageExit;
      }
      return emit(cmdOrbit(cfg, j), cfg);
    }
  } catch (const gsv::InvalidSpec& e) {
    std::cerr << "gsv: " << e.what() << "\n";
    return kUsageExit;
  } catch (const gsv::SyntaxError& e) {
    std::cerr << "gsv: " << e.what() << "\n";
    return kUsageExit;
  } catch (const gsv::ShapeMismatch& e) {
    std::cerr << "gsv: " << e.what() << "\n";
    return kUsageExit;
  }
  return kUsageExit;
}
