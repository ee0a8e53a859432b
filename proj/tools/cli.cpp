#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "semiq/action.hpp"
#include "semiq/corrections.hpp"
#include "semiq/errors.hpp"
#include "semiq/potential.hpp"

namespace semiq::cli {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

// JSON carries the same 12-digit value as CSV.
json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::catalog: return "catalog";
    case Command::spectrum: return "spectrum";
    case Command::compare: return "compare";
    case Command::scan_delta1: return "scan-delta1";
    case Command::oracle: return "oracle";
  }
  return "unknown";
}

std::string cli_name(PotentialKind kind) {
  std::string s(semiq::to_string(kind));
  for (char& c : s)
    if (c == '_') c = '-';
  return s;
}

bool not_converged(FlagSet flags) {
  return flags.contains(Flag::quadrature_not_converged) ||
         flags.contains(Flag::fixed_point_not_converged);
}

PotentialSpec build_potential(const RunRequest& req) {
  const auto kind = parse_potential_kind(req.potential);
  if (!kind) throw InvalidInput("unknown potential kind '" + req.potential + "'");
  if (*kind == PotentialKind::tabulated) {
    if (!req.file) throw InvalidInput("tabulated potentials need --file");
    if (!req.params.empty()) throw InvalidInput("tabulated potentials take no --param");
    return read_tabulated_csv(*req.file).shifted(req.shift);
  }
  return make_catalog_potential(*kind, req.params).shifted(req.shift);
}

json request_json(const RunRequest& req) {
  json j;
  j["command"] = to_string(req.command);
  if (req.command == Command::catalog) return j;
  j["potential"] = req.potential;
  json params = json::object();
  for (const auto& [k, v] : req.params) params[k] = number(v);
  j["params"] = params;
  if (req.file) j["file"] = req.file->string();
  j["beta"] = number(req.beta);
  j["shift"] = number(req.shift);
  json orders = json::array();
  for (SolverOrder o : req.orders) orders.push_back(semiq::to_string(o));
  j["orders"] = orders;
  j["n_max"] = req.n_max ? json(*req.n_max) : json(nullptr);
  return j;
}

json level_json(const Level& l) {
  return {{"n", l.n},
          {"energy", number(l.energy)},
          {"order", semiq::to_string(l.order)},
          {"delta1", number(l.delta1)},
          {"delta_used", number(l.delta_used)},
          {"residual", number(l.residual)},
          {"iterations", l.iterations},
          {"flags", l.flags.join(";")}};
}

json diagnostics_json(const Spectrum& s) {
  json j = json::array();
  if (!s.diagnostics) return j;
  for (const auto& d : s.diagnostics->levels)
    j.push_back({{"n", d.n},
                 {"d_delta1_dn", number(d.d_delta1_dn)},
                 {"d_delta_dn", number(d.d_delta_dn)},
                 {"warning", d.warning}});
  return j;
}

class Csv {
 public:
  explicit Csv(std::ostream& out) : out_(out) {}
  Csv& cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  Csv& cell(double v) { return cell(format_number(v)); }
  Csv& cell(int v) { return cell(std::to_string(v)); }
  void end() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

// ---------------------------------------------------------------------------

int run_catalog(const RunRequest& req, std::ostream& out) {
  const PotentialKind kinds[] = {PotentialKind::harmonic, PotentialKind::poschl_teller,
                                 PotentialKind::trig_tan2, PotentialKind::morse,
                                 PotentialKind::gaussian_well};
  auto joined = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& p : v) s += (s.empty() ? "" : ";") + p;
    return s;
  };
  auto has_class_five = [](PotentialKind k) { return k != PotentialKind::gaussian_well; };
  if (req.format == OutputFormat::json) {
    json kinds_json = json::array();
    for (PotentialKind k : kinds)
      kinds_json.push_back({{"kind", cli_name(k)},
                            {"params", required_params(k)},
                            {"class_five", has_class_five(k)},
                            {"analytic_spectrum", has_analytic_spectrum(k)}});
    out << json{{"request", request_json(req)}, {"kinds", kinds_json}}.dump(2) << '\n';
    return kExitOk;
  }
  Csv csv(out);
  csv.cell("kind").cell("params").cell("class_five").cell("analytic_spectrum").end();
  for (PotentialKind k : kinds)
    csv.cell(cli_name(k))
        .cell(joined(required_params(k)))
        .cell(has_class_five(k) ? "yes" : "no")
        .cell(has_analytic_spectrum(k) ? "yes" : "no")
        .end();
  return kExitOk;
}

int run_spectrum(const RunRequest& req, std::ostream& out) {
  const PotentialSpec p = build_potential(req);
  const QuantumScale scale(req.beta);
  std::vector<SolverOrder> orders = req.orders;
  if (orders.empty()) orders.push_back(SolverOrder::full);

  std::vector<Spectrum> spectra;
  bool flagged = false;
  for (SolverOrder o : orders) {
    spectra.push_back(solve_spectrum(p, scale, o, req.n_max, req.solver));
    for (const Level& l : spectra.back().levels) flagged = flagged || not_converged(l.flags);
  }

  if (req.format == OutputFormat::json) {
    json levels = json::array();
    json diagnostics = json::object();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      for (const Level& l : spectra[i].levels) levels.push_back(level_json(l));
      diagnostics[std::string(semiq::to_string(orders[i]))] = diagnostics_json(spectra[i]);
    }
    out << json{{"request", request_json(req)}, {"levels", levels}, {"diagnostics", diagnostics}}
               .dump(2)
        << '\n';
  } else {
    Csv csv(out);
    csv.cell("n").cell("order").cell("energy").cell("delta1").cell("delta_used").cell("residual")
        .cell("iterations").cell("d_delta_dn").cell("flags").end();
    for (const Spectrum& s : spectra) {
      for (std::size_t i = 0; i < s.levels.size(); ++i) {
        const Level& l = s.levels[i];
        csv.cell(l.n)
            .cell(std::string(semiq::to_string(l.order)))
            .cell(l.energy)
            .cell(l.delta1)
            .cell(l.delta_used)
            .cell(l.residual)
            .cell(l.iterations)
            .cell(s.diagnostics ? s.diagnostics->levels[i].d_delta_dn : 0.0)
            .cell(l.flags.join(";"))
            .end();
      }
    }
  }
  return flagged ? kExitNotConverged : kExitOk;
}

int run_compare(const RunRequest& req, std::ostream& out) {
  const PotentialSpec p = build_potential(req);
  const QuantumScale scale(req.beta);
  std::vector<SolverOrder> orders = req.orders;
  if (orders.empty()) orders = {SolverOrder::order0, SolverOrder::full};

  const ComparisonTable table =
      compare(p, scale, orders, req.reference, req.n_max, req.solver, req.grid);
  bool flagged = false;
  for (const auto& row : table.rows) flagged = flagged || not_converged(row.flags);

  if (req.format == OutputFormat::json) {
    json levels = json::array();
    json diagnostics = json::object();
    json rows = json::array();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      for (std::size_t r = 0; r < table.rows.size(); ++r)
        levels.push_back(level_json(table.spectra[i].levels[r]));
      diagnostics[std::string(semiq::to_string(orders[i]))] = diagnostics_json(table.spectra[i]);
    }
    for (const auto& row : table.rows) {
      json j{{"n", row.n}, {"reference", number(row.reference)}};
      for (std::size_t i = 0; i < orders.size(); ++i) {
        const std::string o(semiq::to_string(orders[i]));
        j["energy_" + o] = number(row.energies[i]);
        j["abs_err_" + o] = number(row.abs_err[i]);
        j["rel_err_" + o] = number(row.rel_err[i]);
      }
      j["delta1"] = number(row.delta1);
      j["delta"] = number(row.delta);
      j["d_delta_dn"] = number(row.d_delta_dn);
      j["flags"] = row.flags.join(";");
      rows.push_back(j);
    }
    diagnostics["reference"] = req.reference == ReferenceKind::analytic ? "analytic" : "oracle";
    diagnostics["comparison"] = rows;
    out << json{{"request", request_json(req)}, {"levels", levels}, {"diagnostics", diagnostics}}
               .dump(2)
        << '\n';
    return flagged ? kExitNotConverged : kExitOk;
  }

  Csv csv(out);
  csv.cell("n");
  for (SolverOrder o : orders) csv.cell("energy_" + std::string(semiq::to_string(o)));
  csv.cell("reference");
  for (SolverOrder o : orders) csv.cell("abs_err_" + std::string(semiq::to_string(o)));
  for (SolverOrder o : orders) csv.cell("rel_err_" + std::string(semiq::to_string(o)));
  csv.cell("delta1").cell("delta").cell("d_delta_dn").cell("flags").end();
  for (const auto& row : table.rows) {
    csv.cell(row.n);
    for (double e : row.energies) csv.cell(e);
    csv.cell(row.reference);
    for (double e : row.abs_err) csv.cell(e);
    for (double e : row.rel_err) csv.cell(e);
    csv.cell(row.delta1).cell(row.delta).cell(row.d_delta_dn).cell(row.flags.join(";")).end();
  }
  return flagged ? kExitNotConverged : kExitOk;
}

int run_scan(const RunRequest& req, std::ostream& out) {
  const PotentialSpec p = build_potential(req);
  const QuantumScale scale(req.beta);
  if (req.points < 2) throw InvalidInput("--points must be at least 2");
  const WellFrame& f = p.frame();
  double window = f.depth;
  if (!std::isfinite(window)) {
    if (!req.e_max) throw InvalidInput("confining wells need --e-max for scan-delta1");
    window = *req.e_max - f.v_min;
  } else if (req.e_max) {
    window = std::min(window, *req.e_max - f.v_min);
  }
  if (!(window > 0)) throw InvalidInput("scan window is empty");

  struct Row {
    double excitation, phi, delta1;
    FlagSet flags;
  };
  std::vector<Row> rows;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  bool flagged = false;
  for (int i = 0; i < req.points; ++i) {
    const double e = window * (0.1 + 0.8 * (i + 0.5) / req.points);
    const IntegralResult phi = action(p, scale, e, req.solver.quadrature);
    CorrectionEstimate est = delta1_from_action(p, scale, e, req.solver.quadrature);
    if (!phi.converged) est.flags.insert(Flag::quadrature_not_converged);
    flagged = flagged || not_converged(est.flags);
    lo = std::min(lo, est.delta1);
    hi = std::max(hi, est.delta1);
    rows.push_back({e, phi.value, est.delta1, est.flags});
  }
  const double spread = hi - lo;
  const char* verdict = spread <= 1e-6 ? "spread<=1e-6" : "spread>1e-6";

  if (req.format == OutputFormat::json) {
    json scan = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      scan.push_back({{"i", static_cast<int>(i)},
                      {"energy", number(f.v_min + rows[i].excitation)},
                      {"excitation", number(rows[i].excitation)},
                      {"phi", number(rows[i].phi)},
                      {"delta1", number(rows[i].delta1)},
                      {"flags", rows[i].flags.join(";")}});
    out << json{{"request", request_json(req)},
                {"levels", json::array()},
                {"diagnostics",
                 {{"scan", scan}, {"spread", number(spread)}, {"summary", verdict}}}}
               .dump(2)
        << '\n';
  } else {
    Csv csv(out);
    csv.cell("i").cell("energy").cell("excitation").cell("phi").cell("delta1").cell("flags").end();
    for (std::size_t i = 0; i < rows.size(); ++i)
      csv.cell(static_cast<int>(i))
          .cell(f.v_min + rows[i].excitation)
          .cell(rows[i].excitation)
          .cell(rows[i].phi)
          .cell(rows[i].delta1)
          .cell(rows[i].flags.join(";"))
          .end();
    out << "# " << verdict << " spread=" << format_number(spread) << '\n';
  }
  return flagged ? kExitNotConverged : kExitOk;
}

int run_oracle(const RunRequest& req, std::ostream& out) {
  const PotentialSpec p = build_potential(req);
  const QuantumScale scale(req.beta);
  int m = 0;
  if (req.n_max) {
    m = *req.n_max + 1;
  } else if (auto n = count_levels(p, scale, SolverOrder::order0, req.solver)) {
    m = *n;
  } else {
    throw InvalidInput("confining wells need --n-max for the oracle");
  }
  if (m < 1) throw InvalidInput("no levels requested");
  const OracleResult r = eigenvalues_fd(p, scale, req.grid, m);

  if (req.format == OutputFormat::json) {
    json levels = json::array();
    for (int n = 0; n < m; ++n)
      levels.push_back({{"n", n}, {"energy", number(r.energies[n])}, {"flags", r.flags.join(";")}});
    out << json{{"request", request_json(req)},
                {"levels", levels},
                {"diagnostics",
                 {{"window", {number(r.window.lo), number(r.window.hi)}},
                  {"grid_points", req.grid.n_points},
                  {"richardson", req.grid.richardson}}}}
               .dump(2)
        << '\n';
  } else {
    Csv csv(out);
    csv.cell("n").cell("energy").cell("flags").end();
    for (int n = 0; n < m; ++n) csv.cell(n).cell(r.energies[n]).cell(r.flags.join(";")).end();
  }
  return kExitOk;
}

}  // namespace

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    int code = kExitOk;
    switch (request.command) {
      case Command::catalog: code = run_catalog(request, buffer); break;
      case Command::spectrum: code = run_spectrum(request, buffer); break;
      case Command::compare: code = run_compare(request, buffer); break;
      case Command::scan_delta1: code = run_scan(request, buffer); break;
      case Command::oracle: code = run_oracle(request, buffer); break;
    }
    out << buffer.str();
    if (code == kExitNotConverged) err << "warning: some results did not converge\n";
    return code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

namespace {

void add_potential_options(CLI::App* cmd, RunRequest& req, std::vector<std::string>& params) {
  cmd->add_option("--potential", req.potential,
                  "harmonic | poschl-teller | trig-tan2 | morse | gaussian-well | tabulated")
      ->required();
  cmd->add_option("--param", params, "NAME=VALUE, repeatable");
  cmd->add_option("--file", req.file, "two-column x,V CSV for --potential tabulated");
  cmd->add_option("--beta", req.beta, "hbar / sqrt(2m)")->required();
  cmd->add_option("--shift", req.shift, "constant added to V");
  cmd->add_option("--format", req.format, "csv | json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}}));
  cmd->add_option("--rel-tol", req.solver.quadrature.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--root-tol", req.solver.root_tol, "relative energy tolerance");
}

void add_solver_options(CLI::App* cmd, RunRequest& req, std::vector<std::string>& orders) {
  cmd->add_option("--order", orders, "order0 | order1 | full | adiabatic, repeatable")
      ->delimiter(',');
  cmd->add_option("--n-max", req.n_max, "highest quantum number");
}

void add_grid_options(CLI::App* cmd, RunRequest& req, std::optional<double>& x_lo,
                      std::optional<double>& x_hi) {
  cmd->add_option("--grid-points", req.grid.n_points, "finite-difference grid intervals");
  cmd->add_option("--half-width", req.grid.half_width, "grid half-width around the minimum");
  cmd->add_option("--x-lo", x_lo, "explicit grid lower edge");
  cmd->add_option("--x-hi", x_hi, "explicit grid upper edge");
  cmd->add_flag("!--no-richardson", req.grid.richardson, "skip Richardson extrapolation");
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidInput("--param expects NAME=VALUE, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw InvalidInput("bad number in --param " + item);
    out[item.substr(0, eq)] = v;
  }
  return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiclassical bound-state spectra of one-dimensional wells"};
  app.require_subcommand(1);

  RunRequest req;
  std::vector<std::string> params, orders;
  std::optional<double> x_lo, x_hi;
  std::string reference = "analytic";

  auto* catalog = app.add_subcommand("catalog", "list catalog potentials and their parameters");
  catalog->add_option("--format", req.format, "csv | json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}}));

  auto* spectrum = app.add_subcommand("spectrum", "solve bound levels");
  add_potential_options(spectrum, req, params);
  add_solver_options(spectrum, req, orders);

  auto* cmp = app.add_subcommand("compare", "compare orders against a reference spectrum");
  add_potential_options(cmp, req, params);
  add_solver_options(cmp, req, orders);
  cmp->add_option("--reference", reference, "analytic | oracle")
      ->check(CLI::IsMember({"analytic", "oracle"}));
  add_grid_options(cmp, req, x_lo, x_hi);

  auto* scan = app.add_subcommand("scan-delta1", "delta1 from the action across energies");
  add_potential_options(scan, req, params);
  scan->add_option("--points", req.points, "number of energies");
  scan->add_option("--e-max", req.e_max, "upper energy for confining wells");

  auto* oracle = app.add_subcommand("oracle", "finite-difference reference eigenvalues");
  add_potential_options(oracle, req, params);
  oracle->add_option("--n-max", req.n_max, "highest quantum number");
  add_grid_options(oracle, req, x_lo, x_hi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kExitInvalidInput;
  }

  try {
    if (catalog->parsed()) req.command = Command::catalog;
    if (spectrum->parsed()) req.command = Command::spectrum;
    if (cmp->parsed()) req.command = Command::compare;
    if (scan->parsed()) req.command = Command::scan_delta1;
    if (oracle->parsed()) req.command = Command::oracle;
    req.params = parse_params(params);
    for (const auto& o : orders) {
      const auto parsed = parse_solver_order(o);
      if (!parsed) throw InvalidInput("unknown order '" + o + "'");
      req.orders.push_back(*parsed);
    }
    req.reference = reference == "oracle" ? ReferenceKind::oracle : ReferenceKind::analytic;
    if (x_lo || x_hi) {
      if (!(x_lo && x_hi)) throw InvalidInput("--x-lo and --x-hi must be given together");
      req.grid.interval = Interval{*x_lo, *x_hi};
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return run(req, out, err);
}

}  // namespace semiq::cli
