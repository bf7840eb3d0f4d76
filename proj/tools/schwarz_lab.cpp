#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "schwarz_lab/harness.hpp"

namespace {

int run_with_config(const std::string& path, const std::string& out_path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "config not readable: " << path << "\n";
    return 3;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 3;
  }
  schwarz_lab::RunConfig cfg;
  try {
    cfg = schwarz_lab::config_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  }
  const schwarz_lab::RunReport rep = schwarz_lab::run(cfg);
  const auto out = schwarz_lab::report_to_json(rep, cfg);
  const std::string dest = out_path.empty() ? j.value("out", std::string{}) : out_path;
  if (!dest.empty())
    schwarz_lab::write_report(out, dest);
  else
    std::cout << out.dump(2) << "\n";
  for (const auto& g : rep.gates)
    std::cerr << "oracle " << g.name << ": max_error=" << g.max_error << " gate=" << g.gate
              << (g.pass ? " ok" : " FAIL") << "\n";
  std::cerr << "checks: " << rep.checks.size() << ", exit " << rep.exit_code << "\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of Schwarz type bounds on unit balls"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  CLI::App* cmd_run = app.add_subcommand("run", "run a full configured sweep");
  cmd_run->add_option("--config", config_path, "JSON run configuration")->required();
  cmd_run->add_option("--out", out_path, "report destination (default from config or stdout)");

  std::string theorem = "T2_1", norm = "euclidean", check_out;
  int dim = 2, samples = 100;
  std::uint64_t seed = 7;
  double tol = 1e-9;
  CLI::App* cmd_check = app.add_subcommand("check", "check one bound on one domain");
  cmd_check->add_option("--theorem", theorem, "theorem tag, e.g. T2_4")->required();
  cmd_check->add_option("--dim", dim, "domain dimension");
  cmd_check->add_option("--norm", norm, "euclidean|sup|one|lp:<p>|product:<dims>");
  cmd_check->add_option("--samples", samples, "number of random instances");
  cmd_check->add_option("--seed", seed, "rng seed");
  cmd_check->add_option("--tol", tol, "residual tolerance");
  cmd_check->add_option("--out", check_out, "report destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (cmd_run->parsed()) return run_with_config(config_path, out_path);

    schwarz_lab::RunConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.tolerance = tol;
    cfg.theorems = {schwarz_lab::theorem_from_string(theorem)};
    std::string spec = norm;
    if (norm == "euclidean" || norm == "sup" || norm == "one" || norm == "real_euclidean")
      spec = norm + ":" + std::to_string(dim);
    else if (norm.rfind("lp:", 0) == 0)
      spec = "lp:" + std::to_string(dim) + ":" + norm.substr(3);
    cfg.domains = {schwarz_lab::space_from_name(spec)};
    if (!schwarz_lab::applicable(cfg.theorems[0], cfg.domains[0])) {
      std::cerr << "config error: " << theorem << " is not applicable on " << cfg.domains[0].name()
                << "\n";
      return 3;
    }
    if (const char* env = std::getenv("SCHWARZ_LAB_THREADS")) {
      const int n = std::atoi(env);
      if (n < 1) {
        std::cerr << "config error: SCHWARZ_LAB_THREADS must be a positive integer\n";
        return 3;
      }
      cfg.threads = n;
    }
    const schwarz_lab::RunReport rep = schwarz_lab::run(cfg);
    const auto out = schwarz_lab::report_to_json(rep, cfg);
    if (!check_out.empty())
      schwarz_lab::write_report(out, check_out);
    else
      std::cout << out.dump(2) << "\n";
    std::cerr << "checks: " << rep.checks.size() << ", exit " << rep.exit_code << "\n";
    return rep.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
