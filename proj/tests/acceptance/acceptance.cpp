// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "reference_math.hpp"
#include "semiq/action.hpp"
#include "semiq/corrections.hpp"
#include "semiq/oracle.hpp"
#include "semiq/spectrum.hpp"

using namespace semiq;

namespace {

const QuantumScale kBeta{0.1};

PotentialSpec pt(double v0 = 1, double alpha = 1) {
  return make_catalog_potential(PotentialKind::poschl_teller, {{"V0", v0}, {"alpha", alpha}});
}
PotentialSpec harmonic() { return make_catalog_potential(PotentialKind::harmonic, {{"k", 1.0}}); }
PotentialSpec tan2() { return make_catalog_potential(PotentialKind::trig_tan2, {{"V0", 1.0}, {"alpha", 1.0}}); }
PotentialSpec morse() { return make_catalog_potential(PotentialKind::morse, {{"D", 1.0}, {"alpha", 1.0}}); }
PotentialSpec gaussian() { return make_catalog_potential(PotentialKind::gaussian_well, {{"V0", 5.0}, {"w", 1.0}}); }

double lambda_of(double g2) { return 0.5 * (1 + std::sqrt(1 + 4 * g2)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Result {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

Result a1() {
  const double lambda = lambda_of(100);
  double worst_pt = 0, worst_t = 0;
  const auto p = solve_spectrum(pt(), kBeta, SolverOrder::full, 9);
  if (p.levels.size() != 10) return {false, "expected 10 Poschl-Teller levels"};
  for (const auto& l : p.levels) worst_pt = std::max(worst_pt, rel(l.energy, -0.01 * std::pow(lambda - 1 - l.n, 2)));
  const auto t = solve_spectrum(tan2(), kBeta, SolverOrder::full, 9);
  if (t.levels.size() != 10) return {false, "expected 10 tan^2 levels"};
  for (const auto& l : t.levels)
    worst_t = std::max(worst_t, rel(l.energy, 0.01 * (std::pow(l.n + lambda, 2) - 100)));
  const double dev_pt = rel(solve_level(pt(), kBeta, 0, SolverOrder::order0).energy, -0.01 * std::pow(lambda - 1, 2));
  const double dev_t = rel(solve_level(tan2(), kBeta, 0, SolverOrder::order0).energy, 0.01 * (lambda * lambda - 100));
  const bool ok = worst_pt <= 1e-8 && worst_t <= 1e-8 && dev_pt >= 1e-3 && dev_t >= 1e-3;
  return {ok, "full rel err PT " + fmt(worst_pt) + ", tan2 " + fmt(worst_t) + "; order0 n=0 rel dev PT " +
                  fmt(dev_pt) + ", tan2 " + fmt(dev_t)};
}

Result a2() {
  double worst = 0;
  for (const auto& p : {harmonic(), pt(), tan2()}) {
    const WellFrame f = p.frame();
    const double span = std::isfinite(f.depth) ? f.depth : 2.0;
    for (int i = 0; i < 20; ++i) {
      const double e = span * (0.05 + 0.9 * i / 19.0);
      const double numeric = action(p, kBeta, e).value;
      worst = std::max(worst, rel(action_closed_form(*p.class_five(), f, kBeta, e), numeric));
    }
  }
  return {worst <= 1e-9, "max rel diff " + fmt(worst)};
}

Result a3() {
  double phi_exact = 0, phi_numeric = 0, direct = 0, harm = 0;
  for (const auto& p : {pt(), tan2()}) {
    const bool is_pt = p.kind() == PotentialKind::poschl_teller;
    const double closed = delta1_closed_form(*p.class_five(), kBeta).delta1;
    auto exact = [&](double e) {
      return is_pt ? testing::poschl_teller_action(1, 1, 0.1, e) : testing::tan2_action(1, 1, 0.1, e);
    };
    for (double f : {0.2, 0.5, 0.8}) {
      const double e = is_pt ? f : 2 * f;
      phi_exact = std::max(phi_exact, std::abs(delta1_from_action(exact, kBeta, 1.0, e).delta1 - closed));
      phi_numeric = std::max(phi_numeric, std::abs(delta1_from_action(p, kBeta, e).delta1 - closed));
      direct = std::max(direct, std::abs(delta1_direct(p, kBeta, e).delta1 - closed));
    }
  }
  for (double e : {0.1, 0.5, 1.0}) {
    harm = std::max(harm, std::abs(delta1_closed_form(*harmonic().class_five(), kBeta).delta1));
    harm = std::max(harm, std::abs(delta1_from_action(harmonic(), kBeta, e).delta1));
    harm = std::max(harm, std::abs(delta1_direct(harmonic(), kBeta, e).delta1));
  }
  const bool ok = phi_exact <= 1e-9 && phi_numeric <= 1e-7 && direct <= 1e-4 && harm <= 1e-6;
  return {ok, "phi-route exact " + fmt(phi_exact) + ", numeric " + fmt(phi_numeric) + ", direct " + fmt(direct) +
                  ", harmonic " + fmt(harm)};
}

Result a4() {
  double worst = 0;
  for (const auto& p : {pt(), tan2()}) {
    const double depth = std::isfinite(p.frame().depth) ? p.frame().depth : 2.0;
    double lo = 1, hi = -1;
    for (int i = 0; i < 20; ++i) {
      const double d = delta1_from_action(p, kBeta, depth * (0.1 + 0.8 * i / 19.0)).delta1;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    worst = std::max(worst, hi - lo);
  }
  return {worst <= 1e-6, "max spread " + fmt(worst)};
}

Result a5() {
  bool odd = true, bounded = true;
  testing::Sampler rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double t = std::pow(10.0, rng.uniform(-10, 10));
    odd = odd && resum_delta(-t) == -resum_delta(t);
    bounded = bounded && std::abs(resum_delta(t)) < 0.5;
  }
  const double lo = resum_delta(-1e6), hi = resum_delta(1e6);
  const bool limits = lo >= -0.5 && lo <= -0.5 + 1e-6 && hi <= 0.5 && hi >= 0.5 - 1e-6;
  double series = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double t = 0.05 * i / 1000;
    series = std::max(series, std::abs(resum_delta(t) - (t - 4 * t * t * t)) / (40 * std::pow(t, 5)));
  }
  return {odd && bounded && limits && series <= 1,
          std::string("odd ") + (odd ? "yes" : "no") + ", bounded " + (bounded ? "yes" : "no") + ", limits " +
              (limits ? "yes" : "no") + ", series ratio " + fmt(series)};
}

Result a6() {
  double worst = 0;
  for (const auto& l : solve_spectrum(harmonic(), kBeta, SolverOrder::order0, 4).levels)
    worst = std::max(worst, rel(l.energy, 0.1 * (2 * l.n + 1)));
  const auto m = solve_spectrum(morse(), kBeta, SolverOrder::order0, std::nullopt);
  for (const auto& l : m.levels) worst = std::max(worst, rel(l.energy, -std::pow(1 - 0.1 * (l.n + 0.5), 2)));
  return {worst <= 1e-9 && m.levels.size() == 10,
          "max rel err " + fmt(worst) + " over 5 harmonic and " + std::to_string(m.levels.size()) + " Morse levels"};
}

Result a7() {
  GridConfig h;
  h.half_width = 5.0;
  const auto he = eigenvalues_fd(harmonic(), kBeta, h, 3).energies;
  GridConfig p;
  p.half_width = 12.0;
  const double pe = eigenvalues_fd(pt(), kBeta, p, 1).energies[0];
  double err = std::abs(pe - (-0.01 * std::pow(lambda_of(100) - 1, 2)));
  for (int n = 0; n < 3; ++n) err = std::max(err, std::abs(he[n] - 0.1 * (2 * n + 1)));

  GridConfig coarse = h;
  coarse.n_points = 500;
  coarse.richardson = false;
  GridConfig fine = coarse;
  fine.n_points = 1000;
  const double ec = eigenvalues_fd(harmonic(), kBeta, coarse, 1).energies[0] - 0.1;
  const double ef = eigenvalues_fd(harmonic(), kBeta, fine, 1).energies[0] - 0.1;
  const double order = std::log2(std::abs(ec / ef));
  return {err <= 1e-6 && std::abs(order - 2) <= 0.5, "max abs err " + fmt(err) + ", observed order " + fmt(order)};
}

Result a8() {
  const auto table =
      compare(gaussian(), kBeta, {SolverOrder::order0, SolverOrder::adiabatic}, ReferenceKind::oracle, std::nullopt);
  bool better = !table.rows.empty();
  double max_d = 0;
  for (const auto& r : table.rows) {
    better = better && r.abs_err[1] < r.abs_err[0];
    max_d = std::max(max_d, std::abs(r.d_delta_dn));
  }
  const auto& diag = table.spectra[1].diagnostics;
  const bool no_warning = diag && !diag->any_warning;
  return {better && max_d < 0.1 && no_warning,
          std::to_string(table.rows.size()) + " levels, adiabatic better on all: " + (better ? "yes" : "no") +
              ", max |d delta/dn| " + fmt(max_d)};
}

Result a9() {
  const auto n = count_levels(pt(), kBeta, SolverOrder::full);
  // Sturm count of the discretized operator below the continuum edge.
  GridConfig g;
  g.half_width = 20.0;
  const Interval w{-20.0, 20.0};
  const int intervals = g.n_points;
  const double h = (w.hi - w.lo) / intervals;
  std::vector<double> d, e;
  for (int i = 1; i < intervals; ++i) d.push_back(pt().value(w.lo + i * h) + 2 * 0.01 / (h * h));
  e.assign(d.size() - 1, -0.01 / (h * h));
  const int sturm = sturm_count(d, e, 0.0);
  return {n && *n == 10 && sturm == 10,
          "count_levels " + (n ? std::to_string(*n) : std::string("none")) + ", Sturm count " + std::to_string(sturm)};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SEMIQ_CLI_PATH + "\" " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

Result a10() {
  const std::string args =
      "compare --potential gaussian-well --param V0=5 --param w=1 --beta 0.1 "
      "--order order0,full,adiabatic --reference oracle --format json";
  const std::string first = run_cli(args), second = run_cli(args);
  const bool identical = !first.empty() && first == second && first.find("\"levels\"") != std::string::npos;

  double worst = 0;
  for (const auto& p : {pt(), gaussian(), morse(), harmonic()}) {
    for (auto order : {SolverOrder::order0, SolverOrder::full, SolverOrder::adiabatic}) {
      if (order == SolverOrder::adiabatic && p.kind() == PotentialKind::morse) continue;
      const auto a = solve_spectrum(p, kBeta, order, 9);
      const auto b = solve_spectrum(p.shifted(1.0), kBeta, order, 9);
      for (std::size_t i = 0; i < a.levels.size(); ++i)
        worst = std::max(worst, std::abs(b.levels[i].energy - a.levels[i].energy - 1.0));
    }
  }
  return {identical && worst <= 1e-12,
          std::string("CLI output identical: ") + (identical ? "yes" : "no") + ", max shift error " + fmt(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"A1 full order exact on Poschl-Teller and tan^2", a1},
      {"A2 closed-form action matches quadrature", a2},
      {"A3 delta1 routes agree", a3},
      {"A4 delta1 constant in energy", a4},
      {"A5 resummation map properties", a5},
      {"A6 order0 exact for harmonic and Morse", a6},
      {"A7 finite-difference oracle accuracy", a7},
      {"A8 adiabatic order beats order0 on the gaussian well", a8},
      {"A9 level count matches Sturm count", a9},
      {"A10 determinism and shift invariance", a10},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Result r{false, ""};
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failures;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << name << " (" << r.detail << ")\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
