#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loopforge {

// Pinned tolerances and budgets of the acceptance suite.
namespace tol {
constexpr double kFrustration = 1e-10;
constexpr double kGroundSpace = 1e-8;
constexpr double kWrongFramingEnergy = 1.0 - 1e-12;
constexpr double kEntropy = 1e-9;
constexpr double kTheorem = 1e-9;
constexpr double kMountain = 1e-12;
constexpr double kMotzkin = 1e-9;
constexpr double kVolumeLawStep = 0.2;
constexpr double kTotalVariation = 0.02;
constexpr double kStandardErrors = 4.0;
constexpr double kDetailedBalance = 1e-15;
constexpr double kBudgetHamiltonian = 120.0;
constexpr double kBudgetTheorem = 1800.0;
constexpr double kBudgetSampler = 600.0;
}  // namespace tol

// Region masks shipped in masks/; the suite uses these copies.
extern const char* const kMaskKpN4;
extern const char* const kMaskLwN4;
extern const char* const kMaskKpN3;
extern const char* const kMaskDiscN2Corner;
extern const char* const kMaskDiscN3Center;
extern const char* const kMaskDiscN3Block;
extern const char* const kMaskDiscN3Bar;

struct AcceptanceOptions {
  std::vector<int> only;  // empty: every criterion
  std::string json_path;
  int threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Runs the criteria, printing one PASS/FAIL line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace loopforge
