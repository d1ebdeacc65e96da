#pragma once

// The acceptance suite: one entry per criterion, each made of named checks.

#include <functional>
#include <string>
#include <vector>

#include "se2h/config.hpp"
#include "se2h/coset_series.hpp"

namespace se2h {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string note;

  bool pass() const;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  double lambda = 0.0;
  bool all_pass() const;
};

/// n points x_i = lo + (hi - lo) frac(i alpha) per axis, with fixed irrational
/// alphas; deterministic on every platform.
std::vector<CosetPoint> interior_points(std::size_t n, const SupportBox& box, double inset_xy,
                                        double inset_theta);

/// Runs the criteria in order; `on_result` sees each one as it finishes.
AcceptanceReport run_acceptance(const RunConfig& config,
                                const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 title: name=measured (tol ...)"-style summary line.
std::string summary_line(const CriterionResult& r);

/// JSON text of the report, numbers with 17 significant digits.
std::string report_json(const AcceptanceReport& report);

}  // namespace se2h
