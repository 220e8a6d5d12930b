#include "cli.hpp"

#include <gtrig/constants.hpp>
#include <gtrig/eigen.hpp>
#include <gtrig/elliptic.hpp>
#include <gtrig/errors.hpp>
#include <gtrig/identities.hpp>
#include <gtrig/pendulum.hpp>
#include <gtrig/trig.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gtrig::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultTol = 1e-10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kJson, kCsv };

struct Table {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  std::optional<bool> pass;
};

std::string format_double(const char* fmt, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string cell_text(const Json& cell, const char* double_fmt) {
  switch (cell.type()) {
    case Json::value_t::null:
      return "";
    case Json::value_t::string:
      return cell.get<std::string>();
    case Json::value_t::boolean:
      return cell.get<bool>() ? "true" : "false";
    case Json::value_t::number_float:
      return format_double(double_fmt, cell.get<double>());
    default:
      return cell.dump();
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_json(const Table& t, std::ostream& os) {
  Json doc;
  doc["command"] = t.command;
  doc["params"] = t.params;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (t.pass) doc["pass"] = *t.pass;
  // nlohmann prints doubles in shortest round-trip form, non-finite as null.
  os << doc.dump(2) << "\n";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << csv_escape(cell_text(row[i], "%.16e"));
    }
    os << "\n";
  }
}

void write_text(const Table& t, std::ostream& os) {
  os << "# " << t.command;
  for (const auto& [key, value] : t.params.items()) {
    os << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
  }
  os << "\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(row[i].is_null() ? "-" : cell_text(row[i], "%.17g"));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) os << "  ";
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size(), ' ');
    }
    os << "\n";
  };
  emit(t.columns);
  for (const auto& line : cells) emit(line);
  if (t.pass) os << "pass: " << (*t.pass ? "true" : "false") << "\n";
}

Json number(double v) { return Json(v); }

// --- eval ---

struct EvalArgs {
  std::string fn;
  double p = 2.0;
  double q = 2.0;
  double k = 0.0;
  std::vector<double> x;
};

Table cmd_eval(const EvalArgs& a) {
  Table t;
  t.command = "eval";
  t.params = {{"fn", a.fn}, {"p", a.p}, {"q", a.q}};
  t.columns = {"x", "value", "err_est"};
  const bool needs_k = a.fn == "am" || a.fn == "sn" || a.fn == "K";
  if (needs_k) t.params["k"] = a.k;

  if (a.fn == "K") {
    const auto r = K_pq(Params(a.p, a.q), a.k);
    t.rows.push_back({number(a.k), number(r.value), number(r.err_est)});
    return t;
  }
  if (a.x.empty()) throw UsageError("eval " + a.fn + ": --x is required");

  if (a.fn == "tanh") {
    for (double x : a.x) {
      const double v = tanh_q(a.q, x);
      // Round trip through artanh_q, scaled by the derivative 1 - |v|^q.
      double err = 0.0;
      if (std::abs(v) < 1.0) {
        err = std::abs(artanh_q(a.q, v) - x) * (1.0 - std::pow(std::abs(v), a.q));
      }
      t.rows.push_back({number(x), number(v), number(err)});
    }
    return t;
  }

  const Params pq(a.p, a.q);
  if (a.fn == "am" || a.fn == "sn") {
    const EllipticParams ep(pq, a.k);
    const double kq = std::pow(a.k, a.q);
    for (double x : a.x) {
      const double phi = am(ep, x);
      const SinCos sc = sincos_pq(pq, phi);
      const double dam = std::pow(1.0 - kq * std::pow(std::abs(sc.sin), a.q), 1.0 / pq.p_star());
      const double dx = std::abs(am_inv(ep, phi) - x);
      if (a.fn == "am") {
        t.rows.push_back({number(x), number(phi), number(dx * dam)});
      } else {
        t.rows.push_back({number(x), number(sc.sin), number(dx * dam * std::abs(sc.cos) + sc.err_est)});
      }
    }
    return t;
  }

  using Eval = double (*)(const Params&, double, Path);
  Eval f = nullptr;
  if (a.fn == "sin") f = sin_pq;
  if (a.fn == "cos") f = cos_pq;
  if (a.fn == "tau") f = tau_pq;
  if (a.fn == "arcsin") f = arcsin_pq_odd;
  if (!f) throw UsageError("eval: unknown function '" + a.fn + "'");
  // The error estimate is the disagreement between the two evaluation paths.
  for (double x : a.x) {
    const double v = f(pq, x, Path::kIncompleteBeta);
    const double w = f(pq, x, Path::kQuadrature);
    t.rows.push_back({number(x), number(v), number(std::abs(v - w))});
  }
  return t;
}

// --- constants ---

Table cmd_constants(const std::vector<std::string>& family_names, std::vector<double> ps, double tol) {
  using namespace constants;
  std::vector<Family> families;
  if (family_names.empty()) {
    for (Family f : {Family::kGlPq, Family::kGp, Family::kCp, Family::kLpi1, Family::kLpi2,
                     Family::kLpiEven, Family::kLpiOdd}) {
      families.push_back(f);
    }
  }
  for (const auto& name : family_names) {
    const auto f = parse_family(name);
    if (!f) throw UsageError("constants: unknown family '" + name + "'");
    families.push_back(*f);
  }
  if (ps.empty()) ps = {2.0};

  Table t;
  t.command = "constants";
  Json fam = Json::array();
  for (Family f : families) fam.push_back(family_name(f));
  t.params = {{"family", fam}, {"p", ps}, {"tol", tol}};
  t.columns = {"name", "p", "value", "err_est", "representation", "terms_used"};
  auto add = [&](Family f, double p, const numerics::EvalResult& r, const std::string& rep) {
    t.rows.push_back({family_name(f), number(p), number(r.value), number(r.err_est), rep, r.work});
  };

  for (Family f : families) {
    if (!family_takes_p(f)) {
      add(f, 4.0, evaluate({f, 4.0, tol, kDefaultMaxTerms}), "series");
      continue;
    }
    for (double p : ps) {
      add(f, p, evaluate({f, p, tol, kDefaultMaxTerms}), "series");
      if (f == Family::kGlPq) {
        add(f, p, pi_ratio(p, tol), "G_P/C_P");
        numerics::EvalResult beta;
        beta.value = Params(conjugate(p), p).pi() / 4.0;
        add(f, p, beta, "beta");
      } else if (f == Family::kGp) {
        const auto integrals = catalan_gp_integral(p);
        add(f, p, integrals.x_over_sin, "integral_x_over_sin");
        add(f, p, integrals.k_integral, "integral_K");
      }
    }
  }
  return t;
}

// --- verify ---

Table cmd_verify(const std::vector<std::string>& ids, const std::vector<double>& ps,
                 std::optional<double> tol) {
  using namespace identities;
  GridSpec spec;
  if (ids.empty()) spec.ids = all_identities();
  for (const auto& name : ids) {
    const auto id = parse_identity(name);
    if (!id) throw UsageError("verify: unknown identity '" + name + "'");
    spec.ids.push_back(*id);
  }
  spec.p_values = ps;
  spec.tol = tol;

  Table t;
  t.command = "verify";
  Json names = Json::array();
  for (auto id : spec.ids) names.push_back(identity_name(id));
  t.params = {{"id", names}, {"p", ps}};
  t.params["tol"] = tol ? Json(*tol) : Json("default");
  t.columns = {"identity_id", "grid_size", "max_residual", "tol", "pass", "error_count", "first_error"};
  bool all = true;
  for (const auto& r : run_suite(spec)) {
    all = all && r.pass;
    t.rows.push_back({identity_name(r.id), r.grid.size(), number(r.max_residual), number(r.tol),
                      r.pass, r.errors.size(),
                      r.errors.empty() ? Json(nullptr) : Json(r.errors.front())});
  }
  t.pass = all;
  return t;
}

// --- pendulum ---

Table cmd_pendulum(const PendulumConfig& cfg, double t_end, double tol) {
  cfg.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("pendulum: t-end must be positive");
  const Trajectory traj = pendulum_numeric(cfg, t_end, tol);

  Table t;
  t.command = "pendulum";
  t.params = {{"p", cfg.p},
              {"lambda", cfg.lambda},
              {"omega0", cfg.omega0},
              {"t_end", t_end},
              {"rel_tol", tol},
              {"k", cfg.k()},
              {"regime", regime_name(cfg.regime())},
              {"accepted", traj.accepted},
              {"rejected", traj.rejected_error + traj.rejected_energy},
              {"max_energy_residual", traj.max_energy_residual}};
  t.columns = {"t", "theta", "theta_dot", "energy_residual"};
  for (const auto& pt : traj.points) {
    t.rows.push_back({number(pt.t), number(pt.theta), number(pt.theta_dot), number(pt.energy_residual)});
  }
  return t;
}

// --- eigen ---

Table cmd_eigen(double p, int n, double L, double R, double Q, int samples) {
  const double ps = conjugate(p);
  const EigenPair u = make_eigenpair(EigenKind::kDirichlet, p, ps, n, L, R);
  const EigenPair v = make_eigenpair(EigenKind::kNeumann, p, ps, n, L, Q);
  const EigenCheck cu = check_eigenpair(u, samples);
  const EigenCheck cv = check_eigenpair(v, samples);
  const ProductCheck prod = product_eigen_check(p, n, L, R, Q, samples);

  Table t;
  t.command = "eigen";
  t.params = {{"p", p}, {"q", ps}, {"n", n}, {"L", L}, {"R", R}, {"Q", Q}, {"samples", samples}};
  t.columns = {"component", "eigenvalue", "residual_closed", "residual_pde",
               "boundary_residual", "zero_count", "expected_zeros"};
  const Json none(nullptr);
  t.rows.push_back({"u", number(u.lambda), none, number(cu.max_residual),
                    number(cu.boundary_residual), cu.zero_count, cu.expected_zeros});
  t.rows.push_back({"v", number(v.lambda), none, number(cv.max_residual),
                    number(cv.boundary_residual), cv.zero_count, cv.expected_zeros});
  t.rows.push_back({"uv", number(prod.xi), number(prod.residual_closed), number(prod.residual_pde),
                    none, prod.zero_count, 2 * n - 1});
  return t;
}

std::optional<double> env_tol() {
  const char* raw = std::getenv("GTRIG_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string("GTRIG_TOL must be a positive number, got '") + raw + "'");
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized trigonometric functions: evaluation, constants and checks", "gtrig"};
  app.require_subcommand(1);

  std::string format = "text";
  std::optional<double> tol_flag;
  std::string output;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--tol", tol_flag, "Tolerance (default 1e-10, or GTRIG_TOL)");
  app.add_option("--output", output, "Write the table to this file instead of stdout");
  auto fallthrough = [](CLI::App* sub) { sub->fallthrough(); };

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a function on a list of points");
  eval->add_option("fn", ev.fn, "sin, cos, tau, arcsin, am, K, sn or tanh")
      ->required()
      ->check(CLI::IsMember({"sin", "cos", "tau", "arcsin", "am", "K", "sn", "tanh"}));
  eval->add_option("--p", ev.p, "Exponent p")->capture_default_str();
  eval->add_option("--q", ev.q, "Exponent q")->capture_default_str();
  eval->add_option("--k", ev.k, "Modulus for am, sn and K")->capture_default_str();
  eval->add_option("--x", ev.x, "Points, comma separated or repeated")->delimiter(',');
  fallthrough(eval);

  std::vector<std::string> families;
  std::vector<double> const_p;
  auto* cons = app.add_subcommand("constants", "Series and integral values of the constants");
  cons->add_option("--family", families, "GL_PQ, G_P, C_P, LPI1, LPI2, LPI_EVEN, LPI_ODD")
      ->delimiter(',');
  cons->add_option("--p", const_p, "Exponents (default 2)")->delimiter(',');
  fallthrough(cons);

  std::vector<std::string> ids;
  std::vector<double> verify_p;
  auto* ver = app.add_subcommand("verify", "Check identities on their grids");
  ver->add_option("--id", ids, "Identity names (default all)")->delimiter(',');
  ver->add_option("--p", verify_p, "Exponents (default per identity)")->delimiter(',');
  fallthrough(ver);

  PendulumConfig pend;
  double t_end = 0.0;
  auto* pen = app.add_subcommand("pendulum", "Integrate the p-pendulum");
  pen->add_option("--p", pend.p)->capture_default_str();
  pen->add_option("--lambda", pend.lambda)->capture_default_str();
  pen->add_option("--omega0", pend.omega0)->capture_default_str();
  pen->add_option("--t-end", t_end)->required();
  fallthrough(pen);

  double eig_p = 2.0, eig_L = 1.0, eig_R = 1.0, eig_Q = 1.0;
  int eig_n = 1, eig_samples = 2001;
  auto* eig = app.add_subcommand("eigen", "Check the eigenpairs u, v and their product");
  eig->add_option("--p", eig_p)->capture_default_str();
  eig->add_option("--n", eig_n)->capture_default_str();
  eig->add_option("--L", eig_L)->capture_default_str();
  eig->add_option("--R", eig_R)->capture_default_str();
  eig->add_option("--Q", eig_Q)->capture_default_str();
  eig->add_option("--samples", eig_samples)->capture_default_str();
  fallthrough(eig);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gtrig: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const std::optional<double> from_env = env_tol();
    if (tol_flag && !(*tol_flag > 0.0)) throw UsageError("--tol must be positive");
    const double tol = tol_flag.value_or(from_env.value_or(kDefaultTol));
    // verify keeps each identity's own tolerance unless one is given explicitly.
    const std::optional<double> verify_tol = tol_flag ? tol_flag : from_env;

    Table table;
    if (*eval) table = cmd_eval(ev);
    if (*cons) table = cmd_constants(families, const_p, tol);
    if (*ver) table = cmd_verify(ids, verify_p, verify_tol);
    if (*pen) table = cmd_pendulum(pend, t_end, tol);
    if (*eig) table = cmd_eigen(eig_p, eig_n, eig_L, eig_R, eig_Q, eig_samples);

    std::ostringstream buf;
    if (format == "json") {
      write_json(table, buf);
    } else if (format == "csv") {
      write_csv(table, buf);
    } else {
      write_text(table, buf);
    }
    if (output.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file || !(file << buf.str()) || !file.flush()) {
        err << "gtrig: cannot write " << output << "\n";
        return kUsage;
      }
    }
    if (table.pass && !*table.pass) return kVerificationFailed;
    return kOk;
  } catch (const UsageError& e) {
    err << "gtrig: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConvergence& e) {
    err << "gtrig: no convergence: " << e.what() << "\n";
    return kConvergence;
  } catch (const DomainError& e) {
    err << "gtrig: domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const Error& e) {
    err << "gtrig: " << e.what() << "\n";
    return kConvergence;
  }
}

}  // namespace gtrig::cli
