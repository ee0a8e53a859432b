#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "reference_math.hpp"
#include "semiq/errors.hpp"
#include "semiq/potential.hpp"

using namespace semiq;

namespace {

PotentialSpec pt(double v0 = 1, double alpha = 1) {
  return make_catalog_potential(PotentialKind::poschl_teller, {{"V0", v0}, {"alpha", alpha}});
}
PotentialSpec harmonic(double k = 1) { return make_catalog_potential(PotentialKind::harmonic, {{"k", k}}); }
PotentialSpec morse(double d = 1, double alpha = 1) {
  return make_catalog_potential(PotentialKind::morse, {{"D", d}, {"alpha", alpha}});
}
PotentialSpec tan2(double v0 = 1, double alpha = 1) {
  return make_catalog_potential(PotentialKind::trig_tan2, {{"V0", v0}, {"alpha", alpha}});
}
PotentialSpec gaussian(double v0 = 5, double w = 1) {
  return make_catalog_potential(PotentialKind::gaussian_well, {{"V0", v0}, {"w", w}});
}

// Sample range used for class-five checks, well inside each domain.
std::pair<double, double> sample_range(const PotentialSpec& p) {
  switch (p.kind()) {
    case PotentialKind::trig_tan2: {
      const double edge = 0.45 * std::numbers::pi / p.param("alpha");
      return {-edge, edge};
    }
    case PotentialKind::morse: return {-1.5, 8.0};
    default: return {-4.0, 4.0};
  }
}

}  // namespace

TEST_CASE("catalog coefficients") {
  SUBCASE("poschl_teller") {
    const auto c = pt().class_five().value();
    CHECK(c.a2 == -1);
    CHECK(c.a1 == 0);
    CHECK(c.a0 == 1);
    CHECK(c.A == 1);
    CHECK(c.C == -1);
  }
  SUBCASE("harmonic") {
    const auto c = harmonic().class_five().value();
    CHECK(c.a2 == 0);
    CHECK(c.a0 == 1);
    CHECK(c.A == 1);
  }
  SUBCASE("morse") {
    const auto c = morse().class_five().value();
    CHECK(c.a1 == -1);
    CHECK(c.a2 == 0);
    CHECK(c.a0 == 0);
    CHECK_FALSE(c.a1_condition_holds());
    // V = D (1 - s)^2 - D with s = exp(-x), checked pointwise.
    for (double x = -1.0; x <= 5.0; x += 0.25) {
      const double s = std::exp(-x);
      CHECK(morse().value(x) == doctest::Approx((1 - s) * (1 - s) - 1).epsilon(1e-13));
      CHECK(c.value_from_s(s) == doctest::Approx(morse().value(x)).epsilon(1e-12));
    }
  }
  SUBCASE("gaussian has no class-five form") { CHECK_FALSE(gaussian().class_five().has_value()); }
}

TEST_CASE("class-five identities hold pointwise for every catalog entry") {
  testing::Sampler rng;
  for (const auto& p : {harmonic(2.5), pt(1.7, 0.6), tan2(0.8, 1.3), morse(2.0, 0.7)}) {
    const auto c = p.class_five().value();
    const auto [lo, hi] = sample_range(p);
    CAPTURE(to_string(p.kind()));
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(lo, hi);
      const double v = p.value(x);
      const double s = c.s(x);
      CHECK(std::abs(v - c.value_from_s(s)) <= 1e-12 * (1 + std::abs(v)));
      const double ds = c.ds_dx(x);
      CHECK(std::abs(ds - c.riccati(s)) <= 1e-12 * (1 + std::abs(ds)));
    }
  }
}

TEST_CASE("catalog construction errors") {
  CHECK_THROWS_AS((void)make_catalog_potential(PotentialKind::harmonic, {{"k", 0.0}}), InvalidInput);
  CHECK_THROWS_AS((void)make_catalog_potential(PotentialKind::harmonic, {{"k", -1.0}}), InvalidInput);
  CHECK_THROWS_AS((void)make_catalog_potential(PotentialKind::poschl_teller, {{"V0", 1.0}}), InvalidInput);
  CHECK_THROWS_AS((void)make_catalog_potential(PotentialKind::morse, {{"D", 1.0}, {"alpha", 1.0}, {"x", 1.0}}),
                  InvalidInput);
  CHECK_THROWS_AS((void)make_catalog_potential(PotentialKind::tabulated, {}), InvalidInput);
  CHECK_FALSE(parse_potential_kind("square_well").has_value());
  CHECK(parse_potential_kind("poschl-teller") == PotentialKind::poschl_teller);
  CHECK(parse_potential_kind("gaussian_well") == PotentialKind::gaussian_well);
  CHECK_THROWS_AS(QuantumScale(0.0), InvalidInput);
  CHECK_THROWS_AS(QuantumScale(-0.1), InvalidInput);
}

TEST_CASE("evaluate and derivatives") {
  CHECK(evaluate(harmonic(), 0.5) == doctest::Approx(0.25));
  CHECK(evaluate(pt(), 0.0) == -1.0);
  CHECK(derivative(harmonic(), 2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS((void)evaluate(tan2(), 2.0), InvalidInput);
  CHECK_THROWS_AS((void)derivative(tan2(), -1.6), InvalidInput);

  // Analytic derivatives against central differences.
  for (const auto& p : {pt(1.3, 0.8), tan2(), morse(1.5, 1.2), gaussian(5, 1.3)}) {
    CAPTURE(to_string(p.kind()));
    for (double x : {-0.7, -0.2, 0.3, 0.9}) {
      const double h = 1e-5;
      const double d1 = (p.value(x + h) - p.value(x - h)) / (2 * h);
      const double d2 = (p.derivative(x + h) - p.derivative(x - h)) / (2 * h);
      CHECK(p.derivative(x) == doctest::Approx(d1).epsilon(1e-7));
      CHECK(p.second_derivative(x) == doctest::Approx(d2).epsilon(1e-7));
    }
  }
}

TEST_CASE("well frame") {
  SUBCASE("harmonic") {
    const WellFrame f = well_frame(harmonic());
    CHECK(f.x_min == 0);
    CHECK(f.v_min == 0);
    CHECK(f.k == 1);
    CHECK(std::isinf(f.depth));
  }
  SUBCASE("poschl_teller: k = V0 alpha^2") {
    const WellFrame f = well_frame(pt());
    CHECK(f.x_min == 0);
    CHECK(f.v_min == -1);
    CHECK(f.k == 1);
    CHECK(f.depth == 1);
  }
  SUBCASE("gaussian: k = V0 / w^2") {
    const WellFrame f = well_frame(gaussian());
    CHECK(f.v_min == -5);
    CHECK(f.k == 5);
    CHECK(f.depth == 5);
  }
  SUBCASE("k matches half the second derivative at the minimum") {
    for (const auto& p : {harmonic(3), pt(2, 0.5), tan2(0.7, 2), morse(3, 0.4), gaussian(2, 0.7)}) {
      const WellFrame f = p.frame();
      CHECK(f.k == doctest::Approx(0.5 * p.second_derivative(f.x_min)).epsilon(1e-14));
      CHECK(p.value(f.x_min) == doctest::Approx(f.v_min));
    }
  }
}

TEST_CASE("turning points") {
  SUBCASE("harmonic") {
    const auto tp = turning_points(harmonic(), 0.25);
    CHECK(tp.x_minus == doctest::Approx(-0.5));
    CHECK(tp.x_plus == doctest::Approx(0.5));
  }
  SUBCASE("poschl_teller: cosh^2 x = 2") {
    const auto tp = turning_points(pt(), -0.5);
    const double x = std::acosh(std::sqrt(2.0));
    CHECK(tp.x_plus == doctest::Approx(x).epsilon(1e-14));
    CHECK(tp.x_minus == doctest::Approx(-x).epsilon(1e-14));
    CHECK(x == doctest::Approx(0.8813736).epsilon(1e-7));
  }
  SUBCASE("morse: exp(-x) in {1/2, 3/2}") {
    const auto tp = turning_points(morse(), -0.75);
    CHECK(tp.x_minus == doctest::Approx(-std::log(1.5)).epsilon(1e-14));
    CHECK(tp.x_plus == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("outside the bound window") {
    CHECK_THROWS_AS((void)turning_points(pt(), -1.5), InvalidInput);
    CHECK_THROWS_AS((void)turning_points(pt(), 0.1), InvalidInput);
    CHECK_THROWS_AS((void)turning_points(harmonic(), -0.1), InvalidInput);
  }
  SUBCASE("bisection agrees with analytic inversion and lands on V = e") {
    testing::Sampler rng(7);
    for (const auto& p : {harmonic(2), pt(1.5, 0.7), tan2(1, 1.5), morse(1, 1), gaussian(5, 1)}) {
      const WellFrame f = p.frame();
      const double scale = std::isfinite(f.depth) ? f.depth : 3.0;
      for (int i = 0; i < 20; ++i) {
        const double ex = rng.uniform(0.01, 0.98) * scale;
        const double e = f.v_min + ex;
        const auto a = turning_points(p, e);
        const auto b = turning_points_bisection(p, ex);
        CAPTURE(to_string(p.kind()));
        CAPTURE(ex);
        const double tol = 1e-12 * std::max(std::abs(e), std::isfinite(f.depth) ? f.depth : ex);
        CHECK(std::abs(p.value(b.x_minus) - e) <= tol);
        CHECK(std::abs(p.value(b.x_plus) - e) <= tol);
        CHECK(b.x_minus == doctest::Approx(a.x_minus).epsilon(1e-9));
        CHECK(b.x_plus == doctest::Approx(a.x_plus).epsilon(1e-9));
        CHECK(a.x_minus < f.x_min);
        CHECK(f.x_min < a.x_plus);
      }
    }
  }
}

TEST_CASE("analytic spectra") {
  const QuantumScale beta(0.1);
  SUBCASE("spec values") {
    CHECK(analytic_spectrum(pt(), beta, 1).at(0) == doctest::Approx(-0.9048751).epsilon(1e-7));
    CHECK(analytic_spectrum(harmonic(), beta, 1).at(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(analytic_spectrum(morse(), beta, 1).at(0) == doctest::Approx(-0.9025).epsilon(1e-15));
    CHECK(analytic_spectrum(tan2(), beta, 1).at(0) == doctest::Approx(0.1051249).epsilon(1e-7));
  }
  SUBCASE("PT: lambda = (1 + sqrt(401)) / 2, ground state -0.01 (lambda - 1)^2") {
    const double lambda = 0.5 * (1 + std::sqrt(401.0));
    const auto e = analytic_spectrum(pt(), beta, 100);
    REQUIRE(e.size() == 10);
    for (int n = 0; n < 10; ++n)
      CHECK(e[n] == doctest::Approx(-0.01 * (lambda - 1 - n) * (lambda - 1 - n)).epsilon(1e-13));
  }
  SUBCASE("Morse: bound while beta alpha (n + 1/2) < sqrt(D)") {
    CHECK(analytic_spectrum(morse(), beta, 100).size() == 10);
    CHECK(analytic_spectrum(morse(), beta, 100).back() == doctest::Approx(-0.0025));
  }
  SUBCASE("strictly increasing, inside the bound window") {
    for (const auto& p : {harmonic(), pt(), tan2(), morse(), pt(3, 0.4), morse(4, 0.3)}) {
      const auto e = analytic_spectrum(p, beta, 40);
      const WellFrame f = p.frame();
      for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(e[i] > f.v_min);
        CHECK(e[i] < f.v_min + f.depth);
        if (i > 0) CHECK(e[i] > e[i - 1]);
      }
    }
  }
  SUBCASE("shift invariance") {
    for (const auto& p : {harmonic(), pt(), tan2(), morse()}) {
      const auto base = analytic_spectrum(p, beta, 8);
      const auto moved = analytic_spectrum(p.shifted(2.5), beta, 8);
      REQUIRE(base.size() == moved.size());
      for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(moved[i] - base[i] - 2.5) <= 1e-14);
    }
  }
  SUBCASE("unsupported kinds") {
    CHECK_THROWS_AS((void)analytic_spectrum(gaussian(), beta, 3), InvalidInput);
    CHECK_THROWS_AS((void)analytic_spectrum(PotentialKind::gaussian_well, {{"V0", 1.0}, {"w", 1.0}}, beta, 3),
                    InvalidInput);
  }
}

TEST_CASE("shifted potentials keep their shape") {
  const auto p = pt().shifted(3.0);
  CHECK(p.frame().v_min == 2.0);
  CHECK(p.value(0.4) == doctest::Approx(pt().value(0.4) + 3.0).epsilon(1e-15));
  CHECK(p.excess(0.4) == pt().excess(0.4));
  CHECK(p.class_five()->C == 2.0);
}

// ---------------------------------------------------------------------------

namespace {
std::pair<std::vector<double>, std::vector<double>> sample(double lo, double hi, int n,
                                                           const std::function<double(double)>& v) {
  std::vector<double> xs(n), vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * i / (n - 1);
    vs[i] = v(xs[i]);
  }
  return {xs, vs};
}
}  // namespace

TEST_CASE("tabulated potentials") {
  SUBCASE("x^2 on [-2, 2], 41 points") {
    auto [xs, vs] = sample(-2, 2, 41, [](double x) { return x * x; });
    const auto p = load_tabulated(xs, vs);
    CHECK(evaluate(p, 0.5) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(p.frame().x_min) <= 1e-10);
    CHECK(p.frame().depth == doctest::Approx(4.0));
    CHECK(p.kind() == PotentialKind::tabulated);
  }
  SUBCASE("-1/cosh^2 x on [-8, 8], 201 points matches the analytic well") {
    auto [xs, vs] = sample(-8, 8, 201, [](double x) { return -1 / (std::cosh(x) * std::cosh(x)); });
    const auto p = load_tabulated(xs, vs);
    const WellFrame f = well_frame(p);
    CHECK(f.k == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(f.x_min) <= 1e-10);
    CHECK(f.v_min == doctest::Approx(-1.0).epsilon(1e-12));
    const auto tp = turning_points(p, -0.5);
    CHECK(tp.x_plus == doctest::Approx(std::acosh(std::sqrt(2.0))).epsilon(1e-4));
    CHECK(std::abs(p.value(tp.x_plus) + 0.5) <= 1e-12);
  }
  SUBCASE("asymmetric well: minimum located between samples by the interpolant") {
    auto [xs, vs] = sample(-1.3, 2.1, 35, [](double x) { return std::exp(x) - 2 * x; });
    const auto p = load_tabulated(xs, vs);
    const double x_min = p.frame().x_min;
    // The interpolant's slope changes sign at x_min.
    CHECK(p.derivative(x_min - 1e-6) <= 0);
    CHECK(p.derivative(x_min + 1e-6) >= 0);
    CHECK(x_min == doctest::Approx(std::log(2.0)).epsilon(0.1));
    for (double x = -1.2; x < 2.0; x += 0.01) CHECK(p.value(x) >= p.frame().v_min - 1e-15);
  }
  SUBCASE("monotone: no overshoot between samples") {
    auto [xs, vs] = sample(-3, 3, 13, [](double x) { return x < 0 ? -x : x * x * x; });
    const auto p = load_tabulated(xs, vs);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double lo = std::min(vs[i], vs[i + 1]), hi = std::max(vs[i], vs[i + 1]);
      for (int j = 1; j < 10; ++j) {
        const double v = p.value(xs[i] + (xs[i + 1] - xs[i]) * j / 10.0);
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
      }
    }
  }
  SUBCASE("errors") {
    std::vector<double> xs{0, 1, 1, 2, 3, 4, 5, 6, 7}, vs{4, 3, 2, 1, 0, 1, 2, 3, 4};
    CHECK_THROWS_AS((void)load_tabulated(xs, vs), InvalidInput);  // duplicate x
    std::vector<double> few{0, 1, 2, 3, 4, 5, 6}, fewv{3, 2, 1, 0, 1, 2, 3};
    CHECK_THROWS_AS((void)load_tabulated(few, fewv), InvalidInput);
    std::vector<double> x9{0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> edge_min{0, 1, 2, 3, 4, 5, 6, 7, 8};
    CHECK_THROWS_AS((void)load_tabulated(x9, edge_min), InvalidInput);
    std::vector<double> double_well{4, 1, 0, 1, 2, 1, 0, 1, 4};
    CHECK_THROWS_AS((void)load_tabulated(x9, double_well), InvalidInput);
    std::vector<double> short_v{4, 1, 0, 1, 2};
    CHECK_THROWS_AS((void)load_tabulated(x9, short_v), InvalidInput);
    auto [xs2, vs2] = sample(-2, 2, 21, [](double x) { return x * x; });
    const auto p = load_tabulated(xs2, vs2);
    CHECK_THROWS_AS((void)evaluate(p, 2.5), InvalidInput);
  }
}

TEST_CASE("tabulated CSV input") {
  const auto dir = std::filesystem::temp_directory_path() / "semiq_test_potential";
  std::filesystem::create_directories(dir);

  auto write = [&](const std::string& name, bool header) {
    const auto path = dir / name;
    std::ofstream out(path);
    if (header) out << "x,V\n";
    for (int i = 0; i <= 40; ++i) {
      const double x = -2 + 0.1 * i;
      out << x << "," << x * x << "\r\n";
    }
    return path;
  };

  CHECK(evaluate(read_tabulated_csv(write("with_header.csv", true)), 0.5) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(evaluate(read_tabulated_csv(write("no_header.csv", false)), 0.5) == doctest::Approx(0.25).epsilon(1e-6));

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "x,V\n0,1\n1,oops\n";
  }
  CHECK_THROWS_AS((void)read_tabulated_csv(dir / "bad.csv"), InvalidInput);
  CHECK_THROWS_AS((void)read_tabulated_csv(dir / "missing.csv"), InvalidInput);
}

TEST_CASE("golden-section search") {
  const double x = detail::golden_section_minimum([](double t) { return (t - 0.3) * (t - 0.3); }, -1, 2, 1e-9);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-7));
}
