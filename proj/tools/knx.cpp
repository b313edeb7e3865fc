// knx: enumerate KN strata, certify exactness, print forbidden loci and run
// the numeric cross-check.
//
// Exit codes: 0 ok / Certified / oracle agrees, 1 Violated / oracle
// mismatch, 2 schema or usage error, 3 cap exceeded or internal error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "knx/error.hpp"
#include "knx/io.hpp"
#include "knx/oracle.hpp"

namespace {

struct Options {
  std::string file;
  bool json = false;
  std::string orientation;
  std::size_t max_weights = knx::kDefaultVertexCap;
  unsigned long eps_den = 1UL << 20;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

int exit_code(knx::ErrorKind kind) {
  switch (kind) {
    case knx::ErrorKind::CapExceeded:
    case knx::ErrorKind::InternalInconsistency:
    case knx::ErrorKind::DegreeOverflow:
      return 3;
    default:
      return 2;
  }
}

knx::ExactnessProblem load(const Options& opt) {
  knx::ExactnessProblem p = knx::to_problem(knx::load_problem_file(opt.file));
  if (!opt.orientation.empty()) p.orientation = knx::parse_orientation(opt.orientation);
  p.cap = opt.max_weights;
  return p;
}

int run_command(knx::Command command, const Options& opt) {
  const knx::ExactnessProblem problem = load(opt);
  const knx::ExactnessVerdict verdict = knx::run(command, problem);
  if (opt.json) {
    std::cout << knx::json_report(command, problem, verdict).dump(2) << "\n";
  } else {
    std::cout << knx::text_report(command, problem, verdict);
  }
  return verdict.status == knx::VerdictStatus::Violated ? 1 : 0;
}

int run_oracle(const Options& opt) {
  if (opt.eps_den < 2) throw knx::Error(knx::ErrorKind::InvalidParameter, "--eps-den must be at least 2");
  knx::OracleConfig config;
  config.epsilon_values = {knx::Rational(-1, opt.eps_den), knx::Rational(-1, 16 * opt.eps_den)};
  config.sample_count = opt.samples;
  config.rng_seed = opt.seed;

  std::vector<knx::LabeledOracleReport> reports;
  const knx::ExactnessProblem problem = load(opt);
  reports.emplace_back(opt.file, knx::cross_check_enumeration(problem, config));
  for (std::size_t i = 0; i < config.sample_count; ++i) {
    knx::ExactnessProblem sample = knx::random_sample(config.rng_seed, i);
    sample.orientation = problem.orientation;
    sample.cap = problem.cap;
    reports.emplace_back("sample " + std::to_string(i), knx::cross_check_enumeration(sample, config));
  }
  bool agree = true;
  for (const auto& r : reports) agree = agree && r.second.agree;
  if (opt.json) {
    std::cout << knx::json_report(reports).dump(2) << "\n";
  } else {
    std::cout << knx::text_report(reports);
  }
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirwan-Ness strata and exactness certificates"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "problem file (JSON)")->required();
    sub->add_flag("--json", opt.json, "machine-readable report");
    sub->add_option("--orientation", opt.orientation, "negative | positive | both")
        ->check(CLI::IsMember({"negative", "positive", "both"}));
    sub->add_option("--max-weights", opt.max_weights, "cap on distinct weights (with alpha_0)")
        ->check(CLI::PositiveNumber);
  };
  auto* strata = app.add_subcommand("strata", "list the KN strata");
  auto* check = app.add_subcommand("check", "certify c against every stratum");
  auto* forb = app.add_subcommand("forbidden", "forbidden locus of c = base + t * direction");
  auto* oracle = app.add_subcommand("oracle", "cross-check the enumeration at concrete eps");
  for (auto* sub : {strata, check, forb, oracle}) add_common(sub);
  oracle->add_option("--eps-den", opt.eps_den, "eps values -1/k and -1/(16k)");
  oracle->add_option("--samples", opt.samples, "random torus problems to add");
  oracle->add_option("--seed", opt.seed, "base seed for the samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (strata->parsed()) return run_command(knx::Command::Strata, opt);
    if (check->parsed()) return run_command(knx::Command::Check, opt);
    if (forb->parsed()) return run_command(knx::Command::Forbidden, opt);
    return run_oracle(opt);
  } catch (const knx::Error& e) {
    std::cerr << "knx: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "knx: " << e.what() << "\n";
    return 3;
  }
}
