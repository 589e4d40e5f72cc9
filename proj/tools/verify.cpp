// verify: runs the check suites of one instance and prints a report.
// Exit status 0 when no check fails, 1 on failures, 2 on invalid input.

#include <iostream>

#include <CLI11.hpp>

#include "psibundle/bench.hpp"
#include "psibundle/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for coalgebra ψ-principal bundles"};
  psb::SuiteConfig cfg;
  std::string format = "text";
  bool no_timings = false;

  app.add_option("instance", cfg.instance, "cylinder, glq2 or selfbundle")
      ->required()
      ->check(CLI::IsMember(psb::instance_names()));
  std::vector<std::string> suites = psb::suite_names();
  suites.insert(suites.begin(), "all");
  app.add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember(suites));
  app.add_option("--max-degree", cfg.max_degree, "P-degree window (y-degree on the cylinder)");
  app.add_option("--x-degree", cfg.x_degree, "|x-degree| window");
  app.add_option("--c-index", cfg.c_index, "C-index window");
  app.add_option("--numeric-q", cfg.numeric_q, "rational q samples in the numeric pre-pass")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "seed of the q samples");
  app.add_option("--report", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--mutate", cfg.mutate, "break the cylinder on purpose")->check(CLI::IsMember(psb::mutation_names()));
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  app.add_flag("--no-timings", no_timings, "report 0 ms so output is reproducible byte for byte");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.timings = !no_timings;

  try {
    const psb::Report r = psb::run_suite(cfg);
    std::cout << (format == "json" ? r.json() : r.text());
    return r.ok() ? 0 : 1;
  } catch (const psb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
