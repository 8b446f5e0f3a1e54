// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "dbubble.hpp"

using namespace dbubble;
using verify::Outcome;

namespace {

using dbubble::detail::short_number;

constexpr std::array<double, 10> kStandard = {6.490, 7.597, 8.979, 10.493, 12.085, 13.731, 15.416, 17.132, 18.872, 20.632};
constexpr std::array<double, 10> kSymmetric = {6.720, 7.837, 9.176, 10.650, 12.212, 13.835, 15.502, 17.203, 18.932, 20.683};
constexpr std::array<double, 10> kTwoCircles = {6.868, 7.858, 9.177, 10.650, 12.212, 13.835, 15.502, 17.203, 18.932, 20.683};
constexpr std::array<double, 10> kConcentric = {9.931, 12.009, 14.346, 16.820, 19.379, 21.998, 24.661, 27.359, 30.085, 32.834};

Outcome table_reproduction() {
  std::vector<double> ps;
  for (int p = 1; p <= 10; ++p) ps.push_back(p);
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = perimeter_table(ps);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!t.complete()) return {false, "table has failed cells"};
  struct Row {
    CandidateKind kind;
    const std::array<double, 10>* printed;
    double tol;
  };
  const Row rows[] = {{CandidateKind::concentric, &kConcentric, 0.002},
                      {CandidateKind::two_circles, &kTwoCircles, 0.002},
                      {CandidateKind::standard, &kStandard, 0.005},
                      {CandidateKind::symmetric, &kSymmetric, 0.01}};
  bool ok = seconds < 60.0;
  std::string detail;
  int cells = 0;
  for (const auto& row : rows) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double dev = std::abs(*t.rows[i].cell(row.kind).value - (*row.printed)[i]);
      worst = std::max(worst, dev);
      ok = ok && dev <= row.tol;
      ++cells;
    }
    detail += std::string(to_string(row.kind)) + " " + short_number(worst) + ", ";
  }
  return {ok, std::to_string(cells) + " cells; max |diff| " + detail + "time " + short_number(seconds) + " s"};
}

Outcome concentric_closed_form() {
  double worst = 0.0;
  for (double p : {0.0, 1.0, 2.0, 5.0, 10.0}) {
    const DensityExponent d(p);
    const auto c = build_concentric(d, 1.0, 1.0);
    double quad = 0.0;
    for (const auto& e : c.edges) quad += weighted_length(e.curve, d, 1e-13);
    const double closed = concentric_perimeter_closed_form(d, c.parameter("R1"), c.parameter("R2"));
    worst = std::max(worst, std::abs(quad - closed) / closed);
  }
  return {worst <= 1e-9, "max relative difference " + short_number(worst)};
}

Outcome scaling_laws() {
  bool ok = true;
  std::string detail;
  for (double p : {1.0, 2.5, 6.0}) {
    const auto o = verify::candidate_scaling(1e-7, p);
    ok = ok && o.passed;
    detail += "p=" + short_number(p) + ": " + o.detail + "; ";
  }
  return {ok, detail};
}

Outcome equilibrium() {
  const auto r = verify::standard_equilibrium({0.5, 1.0, 2.0, 5.0, 10.0});
  const bool ok = r.verdict && r.angle_error <= 1e-6 && r.variation <= 1e-8 && r.cocycle <= 1e-9;
  return {ok, "angle error " + short_number(r.angle_error) + ", kappa_f variation " + short_number(r.variation) +
                  ", cocycle " + short_number(r.cocycle)};
}

Outcome circle_curvature() {
  const auto v = verify::circle_variation(2.0);
  const bool ok = v.through <= 1e-10 && v.centered <= 1e-10 && v.control >= 1e-3;
  return {ok, "through origin " + short_number(v.through) + ", centred " + short_number(v.centered) + ", control " +
                  short_number(v.control)};
}

Outcome ode_oracle() {
  // The circle of radius 1 through the origin has kappa_f = 2 at p = 2 under
  // kappa_f = kappa_0 - d(log r^p)/dN. It is followed from its top point in
  // both directions until the default origin guard.
  const IntegratorOptions opts;
  const auto full = verify::circle_oracle(opts.origin_guard, opts);
  std::string detail = "deviation " + short_number(full.deviation) + " at guard " + short_number(opts.origin_guard);
  for (double gap : {1e-1, 3e-2, 1e-2, 1e-3}) {
    detail += "; to r=" + short_number(gap) + ": " + short_number(verify::circle_oracle(gap, opts).deviation);
  }
  return {full.deviation <= 1e-8, detail};
}

Outcome pinch() {
  const auto o = verify::pinch_orders(2.0);
  const bool ok = o.worst_delta < 0.0 && std::abs(o.saved_slope - 3.0) <= 0.1 && std::abs(o.added_slope - 4.0) <= 0.1;
  return {ok, "max delta on r <= 0.05 " + short_number(o.worst_delta) + ", slopes " + short_number(o.saved_slope) +
                  " and " + short_number(o.added_slope)};
}

Outcome combine(std::initializer_list<std::function<Outcome()>> parts) {
  Outcome all{true, {}};
  for (const auto& f : parts) {
    const auto o = f();
    all.passed = all.passed && o.passed;
    all.detail += (all.detail.empty() ? "" : "; ") + o.detail;
  }
  return all;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"table reproduction", table_reproduction},
      {"concentric closed form vs quadrature", concentric_closed_form},
      {"euclidean limit", [] { return verify::euclidean_limit(1e-4, 1e-6); }},
      {"scaling laws", scaling_laws},
      {"standard candidate equilibrium", equilibrium},
      {"circle generalized curvature", circle_curvature},
      {"ode circle oracle", ode_oracle},
      {"pinch experiment", pinch},
      {"geodesics",
       [] {
         return combine({[] { return verify::geodesic_examples(1e-9); }, verify::geodesic_minimality,
                         [] { return verify::geodesic_continuity(1e-8); }});
       }},
      {"phi_eps map",
       [] {
         return combine({[] { return verify::phi_eps_jacobian_unit(1e-10); }, [] { return verify::phi_eps_area(1e-9); },
                         verify::phi_eps_decreases_length});
       }},
      {"conformal maps",
       [] {
         return combine({[] { return verify::area_cone_isometry(1e-8); },
                         [] { return verify::perimeter_cone_area_equality(1e-8); }});
       }},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2d %s: %s\n", o.passed ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria pass\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
