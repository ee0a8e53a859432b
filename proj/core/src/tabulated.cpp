#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "semiq/errors.hpp"
#include "semiq/potential.hpp"

namespace semiq {

namespace {

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes, three-point
// shape-preserving end conditions).
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), m(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      m[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (m[i - 1] * m[i] <= 0) continue;
      const double w1 = 2 * h[i] + h[i - 1];
      const double w2 = h[i] + 2 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
    }
    d_[0] = end_slope(h[0], h[1], m[0], m[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
  }

  [[nodiscard]] double value(double x) const {
    const auto [i, t, h] = locate(x);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * d_[i + 1];
  }

  [[nodiscard]] double slope(double x) const {
    const auto [i, t, h] = locate(x);
    const double t2 = t * t;
    return (6 * t2 - 6 * t) * (y_[i] - y_[i + 1]) / h + (3 * t2 - 4 * t + 1) * d_[i] +
           (3 * t2 - 2 * t) * d_[i + 1];
  }

  [[nodiscard]] double curvature(double x) const {
    const auto [i, t, h] = locate(x);
    return (12 * t - 6) * (y_[i] - y_[i + 1]) / (h * h) +
           ((6 * t - 4) * d_[i] + (6 * t - 2) * d_[i + 1]) / h;
  }

  [[nodiscard]] const std::vector<double>& x() const noexcept { return x_; }
  [[nodiscard]] const std::vector<double>& y() const noexcept { return y_; }

 private:
  struct Where {
    std::size_t i;
    double t;
    double h;
  };

  static double end_slope(double h0, double h1, double m0, double m1) {
    double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0) return 0.0;
    if (m0 * m1 <= 0 && std::abs(d) > 3 * std::abs(m0)) return 3 * m0;
    return d;
  }

  [[nodiscard]] Where locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    return {i, (x - x_[i]) / h, h};
  }

  std::vector<double> x_, y_, d_;
};

// Index of the single interior local minimum of the samples.
std::size_t single_minimum_index(std::span<const double> v) {
  int direction = 0;  // -1 falling, +1 rising
  std::size_t count = 0, where = 0, last_fall_end = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double dv = v[i + 1] - v[i];
    if (dv < 0) {
      direction = -1;
      last_fall_end = i + 1;
    } else if (dv > 0) {
      if (direction == -1) {
        ++count;
        where = last_fall_end;
      }
      direction = +1;
    }
  }
  if (count == 0) throw InvalidInput("tabulated potential has its minimum at the sample boundary");
  if (count > 1)
    throw InvalidInput("tabulated potential has " + std::to_string(count) +
                       " local minima; a single well is required");
  return where;
}

}  // namespace

PotentialSpec load_tabulated(std::span<const double> x_samples, std::span<const double> v_samples) {
  if (x_samples.size() != v_samples.size())
    throw InvalidInput("x and V sample counts differ");
  if (x_samples.size() < 8) throw InvalidInput("at least 8 samples are required");
  for (std::size_t i = 0; i < x_samples.size(); ++i) {
    if (!std::isfinite(x_samples[i]) || !std::isfinite(v_samples[i]))
      throw InvalidInput("non-finite sample at row " + std::to_string(i));
    if (i > 0 && !(x_samples[i] > x_samples[i - 1]))
      throw InvalidInput("x samples must be strictly increasing (row " + std::to_string(i) + ")");
  }

  const std::size_t imin = single_minimum_index(v_samples);
  auto interp = std::make_shared<const Pchip>(
      std::vector<double>(x_samples.begin(), x_samples.end()),
      std::vector<double>(v_samples.begin(), v_samples.end()));

  const double lo = x_samples.front(), hi = x_samples.back();

  // Golden-section on the bracketing samples, then polish on the sign of the
  // interpolant's slope.
  double x_min = detail::golden_section_minimum([&](double x) { return interp->value(x); },
                                                x_samples[imin - 1], x_samples[imin + 1], 1e-9);
  {
    double a = std::max(x_min - 1e-8, x_samples[imin - 1]);
    double b = std::min(x_min + 1e-8, x_samples[imin + 1]);
    if (interp->slope(a) <= 0 && interp->slope(b) >= 0) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        (interp->slope(mid) < 0 ? a : b) = mid;
      }
      x_min = 0.5 * (a + b);
    }
  }
  const double v_min = interp->value(x_min);

  // Curvature from a five-point stencil on the interpolant.
  double h = (hi - lo) / static_cast<double>(x_samples.size() - 1);
  h = std::min({h, (x_min - lo) / 2, (hi - x_min) / 2});
  const double f2p = interp->value(x_min + 2 * h), f1p = interp->value(x_min + h);
  const double f1m = interp->value(x_min - h), f2m = interp->value(x_min - 2 * h);
  const double numerator = -f2p + 16 * f1p - 30 * v_min + 16 * f1m - f2m;
  // Below the rounding floor of the stencil the minimum is treated as flat.
  const double noise = 64 * std::numeric_limits<double>::epsilon() *
                       std::max({std::abs(f2p), std::abs(f1p), std::abs(v_min), std::abs(f1m), std::abs(f2m),
                                 std::abs(f2p - v_min), std::abs(f2m - v_min)});
  const double v2 = numerator > noise ? numerator / (12 * h * h) : 0.0;

  WellFrame frame;
  frame.x_min = x_min;
  frame.v_min = v_min;
  frame.k = std::max(0.0, v2 / 2);
  frame.depth = std::min(v_samples.front(), v_samples.back()) - v_min;
  if (!(frame.depth > 0)) throw InvalidInput("tabulated potential has no bound-state window");

  PotentialSpec::Model m;
  m.excess = [interp, v_min](double x) { return interp->value(x) - v_min; };
  m.d1 = [interp](double x) { return interp->slope(x); };
  m.d2 = [interp](double x) { return interp->curvature(x); };

  std::map<std::string, double> params{{"samples", static_cast<double>(x_samples.size())}};
  return PotentialSpec(PotentialKind::tabulated, std::move(params), Interval{lo, hi}, frame,
                       std::nullopt, std::move(m));
}

PotentialSpec read_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open tabulated potential file " + path.string());

  std::vector<double> xs, vs;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InvalidInput(path.string() + ":" + std::to_string(row) + ": expected two columns");
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double x = std::strtod(a.c_str(), &end_a);
    const double v = std::strtod(b.c_str(), &end_b);
    auto rest_blank = [](const char* p) {
      while (*p == ' ' || *p == '\t') ++p;
      return *p == '\0';
    };
    const bool ok = end_a != a.c_str() && end_b != b.c_str() && rest_blank(end_a) && rest_blank(end_b);
    if (!ok) {
      if (xs.empty() && vs.empty() && row == 1) continue;  // header
      throw InvalidInput(path.string() + ":" + std::to_string(row) + ": malformed number");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  return load_tabulated(xs, vs);
}

}  // namespace semiq
