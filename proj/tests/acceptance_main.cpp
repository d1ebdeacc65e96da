// Acceptance suite with the default configuration: one line per criterion.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "se2h/acceptance.hpp"

int main(int argc, char** argv) {
  se2h::RunConfig cfg;
  if (argc > 1) {
    cfg.out_dir = argv[1];
  }
  const se2h::AcceptanceReport report = se2h::run_acceptance(
      cfg, [](const se2h::CriterionResult& r) { std::cout << se2h::summary_line(r) << std::endl; });

  const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / cfg.report;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << se2h::report_json(report);
  std::cout << "report: " << path.string() << "\n";

  const bool ok = report.all_pass();
  std::cout << (ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << std::endl;
  return ok ? 0 : 1;
}
