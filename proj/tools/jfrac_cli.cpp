#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "jfrac/errors.hpp"
#include "jfrac/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailedRows = 1;
constexpr int kConfigError = 2;

// "--key value" or "--key=value" pairs left over after the fixed options.
void apply_overrides(jfrac::SweepConfig& cfg, const std::vector<std::string>& extra) {
  for (std::size_t i = 0; i < extra.size(); ++i) {
    const std::string& a = extra[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3)
      throw jfrac::ConfigError("unexpected argument '" + a + "'");
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      cfg.set(a.substr(2, eq - 2), a.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extra.size()) throw jfrac::ConfigError("missing value for '" + a + "'");
    cfg.set(a.substr(2), extra[++i]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for Jacobi fractional integrals"};
  app.set_version_flag("--version", "jfrac 0.1.0");
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-suites", "Print the available suites");

  auto* verify = app.add_subcommand("verify", "Run a suite and write a CSV report");
  std::string suite, config_path, out_path, seed;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--config", config_path, "key = value settings file");
  verify->add_option("--out", out_path, "CSV destination (stdout when omitted)");
  verify->add_option("--seed", seed, "Seed for randomized families");
  verify->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (list->parsed()) {
    for (const auto& s : jfrac::SweepConfig::suites()) std::cout << s << '\n';
    return kOk;
  }

  jfrac::SweepReport report;
  std::string destination;
  try {
    jfrac::SweepConfig cfg(suite);
    if (!config_path.empty()) cfg.load_file(config_path);
    apply_overrides(cfg, verify->remaining());
    if (!seed.empty()) cfg.set("seed", seed);
    if (!out_path.empty()) cfg.set("out", out_path);
    destination = cfg.output();
    cfg.validate();
    report = jfrac::run_suite(cfg);
  } catch (const jfrac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const jfrac::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailedRows;
  }

  try {
    if (destination.empty())
      jfrac::write_csv(report, std::cout);
    else
      jfrac::emit_csv(report, destination);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailedRows;
  }

  std::fprintf(stderr, "%s: %zu rows, %d failed, max ratio %s, %.2f s\n", suite.c_str(),
               report.rows.size(), report.failures, jfrac::format_real(report.max_ratio).c_str(),
               report.wall_seconds);
  return report.failures == 0 ? kOk : kFailedRows;
}
