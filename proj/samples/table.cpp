// Prints the perimeter table for p = 1..10 at unit areas, then checks the
// standard candidate of the p = 2 row for equilibrium.
#include <cstdio>

#include "dbubble.hpp"

int main() {
  using namespace dbubble;
  std::vector<double> ps;
  for (int p = 1; p <= 10; ++p) ps.push_back(p);
  const auto table = perimeter_table(ps);

  std::printf("%4s", "p");
  for (auto kind : kAllCandidateKinds) std::printf(" %12s", std::string(to_string(kind)).c_str());
  std::printf("\n");
  for (const auto& row : table.rows) {
    std::printf("%4g", row.p);
    for (auto kind : kAllCandidateKinds) {
      const auto& cell = row.cell(kind);
      if (cell.value) {
        std::printf(" %12.3f", *cell.value);
      } else {
        std::printf(" %12s", "failed");
      }
    }
    std::printf("\n");
  }

  const auto standard = build_standard(DensityExponent(2.0), 1.0, 1.0);
  const auto report = check_equilibrium(standard, 1e-6, 1e-8);
  std::printf("\nstandard, p = 2: %s, cocycle residual %.2e\n", report.equilibrium ? "in equilibrium" : report.reason.c_str(),
              report.cocycle_residual);
  return table.complete() && report.equilibrium ? 0 : 1;
}
