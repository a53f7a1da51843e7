#include "qdeform/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdeform/algebra.hpp"
#include "qdeform/coherent.hpp"
#include "qdeform/geometry.hpp"
#include "qdeform/params.hpp"
#include "qdeform/statistics.hpp"
#include "qdeform/table.hpp"
#include "qdeform/verify.hpp"

namespace qdeform {

namespace {

// Offset used by --limit-q1; well outside the exclusion band and small enough
// that phi(n) = n and E(n) = n + 1/2 hold to 1e-4 over the default ranges.
constexpr double kLimitOffset = 1e-6;

enum class Format { kCsv, kJson };

struct RunConfig {
  double q = 2.0;
  double l = 1.0;
  double lambda = 0.0;
  std::size_t dim = 64;
  long nmax = 10;
  double z_re = 0.0;
  double z_im = 0.0;
  double x_min = 0.0;
  double x_max = -1.0;  // < 0: pick from the domain
  std::size_t points = 11;
  bool log_grid = false;
  Format format = Format::kCsv;
  std::vector<std::string> tol_specs;
  bool limit_q1 = false;
  std::string out_path;
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  unsigned long seed = 0;

  DeformParams params() const { return DeformParams(limit_q1 ? 1.0 + kLimitOffset : q, l, lambda); }
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& specs) {
  std::map<std::string, double> out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--tol expects name=value, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
    } catch (const std::logic_error&) {
      throw DomainError("--tol value for '" + name + "' is not a number");
    }
    if (!default_tolerances().contains(name)) throw DomainError("unknown tolerance name '" + name + "'");
    if (!(value > 0.0)) throw DomainError("tolerance '" + name + "' must be positive");
    out[name] = value;
  }
  return out;
}

void add_param_meta(Table& t, const RunConfig& cfg, const DeformParams& p) {
  t.add_meta("q", p.q());
  t.add_meta("l", p.l());
  t.add_meta("lambda", p.lambda());
  t.add_meta("scale", p.scale());
  t.add_meta("seed", std::to_string(cfg.seed));
  for (const auto& [name, value] : parse_tolerances(cfg.tol_specs)) t.add_meta("tol." + name, value);
}

std::vector<double> make_grid(const RunConfig& cfg, const DeformParams& p) {
  if (cfg.points < 1) throw DomainError("--points must be >= 1");
  const DomainDisk disk = domain_radius(p);
  double hi = cfg.x_max;
  if (hi < 0.0) hi = disk.finite() ? 0.5 * disk.radius : 2.0 * p.scale();
  const double lo = cfg.x_min;
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("grid needs 0 <= x-min <= x-max");
  if (cfg.log_grid && !(lo > 0.0)) throw DomainError("--log-grid needs x-min > 0");
  check_in_disk(p, hi);

  std::vector<double> g(cfg.points, lo);
  if (cfg.points == 1) return g;
  const double n = static_cast<double>(cfg.points - 1);
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double f = static_cast<double>(i) / n;
    g[i] = cfg.log_grid ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

Table cmd_spectrum(const RunConfig& cfg) {
  const DeformParams p = cfg.params();
  if (cfg.nmax < 0) throw DomainError("--nmax must be >= 0");
  Table t;
  add_param_meta(t, cfg, p);
  t.add_meta("hbar", cfg.hbar);
  t.add_meta("mass", cfg.mass);
  t.add_meta("omega", cfg.omega);
  t.columns = {"n", "E", "var_X", "var_P", "dX_dP"};
  for (const auto& r : spectrum(p, cfg.nmax, PhysicalUnits{cfg.hbar, cfg.mass, cfg.omega})) {
    t.rows.push_back({static_cast<double>(r.n), r.energy, r.var_x, r.var_p, r.uncertainty_product});
  }
  return t;
}

Table cmd_coherent(const RunConfig& cfg) {
  const DeformParams p = cfg.params();
  const std::complex<double> z(cfg.z_re, cfg.z_im);
  const FockTruncation trunc(cfg.dim);
  const CoherentState cs = amplitudes(p, z, trunc);
  Table t;
  add_param_meta(t, cfg, p);
  t.add_meta("z_re", z.real());
  t.add_meta("z_im", z.imag());
  t.add_meta("dim", std::to_string(cfg.dim));
  t.add_meta("domain_radius", domain_radius(p).radius);
  t.add_meta("normalization", cs.norm_value);
  t.add_meta("tail_residual", cs.tail_residual);
  t.add_meta("tail_bound", cs.tail_bound);
  t.add_meta("eigen_residual", eigen_residual(p, z, trunc));
  if (cs.truncation_warning) t.add_meta("warning", "truncation tail exceeds 1e-10; increase --dim");
  t.columns = {"n", "re_c", "im_c", "abs_c2"};
  for (std::size_t n = 0; n < cs.amplitudes.size(); ++n) {
    const auto c = cs.amplitudes[n];
    t.rows.push_back({static_cast<double>(n), c.real(), c.imag(), std::norm(c)});
  }
  return t;
}

Table cmd_stats(const RunConfig& cfg) {
  const DeformParams p = cfg.params();
  const auto grid = make_grid(cfg, p);
  Table t;
  add_param_meta(t, cfg, p);
  t.add_meta("domain_radius", domain_radius(p).radius);
  t.add_meta("grid", cfg.log_grid ? "log" : "linear");
  t.columns = {"x", "mean_N", "mean_N2", "mandel_Q", "W"};
  for (double x : grid) {
    const StatsPoint s = stats_point(p, x);
    t.rows.push_back({x, s.mean_n, s.second_moment, s.mandel_q, metric_w(p, x).w});
  }
  return t;
}

void emit(const Table& t, Format f, std::ostream& os) {
  if (f == Format::kJson) {
    write_json(os, t);
  } else {
    write_csv(os, t);
  }
}

// Notes are free text (exception messages may contain commas).
std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const DeformParams p = cfg.params();
  VerifyConfig vc;
  vc.dim = cfg.dim;
  vc.tolerances = parse_tolerances(cfg.tol_specs);
  const auto outcomes = run_verify(p, vc);
  const bool ok = all_passed(outcomes);

  if (cfg.format == Format::kJson) {
    nlohmann::ordered_json j;
    j["parameters"] = p.describe();
    j["passed"] = ok;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& o : outcomes) {
      nlohmann::ordered_json c;
      c["check_name"] = o.check_name;
      c["max_rel_error"] = format_double(o.max_rel_error);
      c["threshold"] = o.threshold;
      c["status"] = to_string(o.status);
      c["passed"] = o.passed();
      if (!o.note.empty()) c["note"] = o.note;
      j["checks"].push_back(std::move(c));
    }
    os << j.dump(2) << '\n';
  } else {
    os << "# " << p.describe() << '\n';
    os << "# dim = " << cfg.dim << '\n';
    os << "check_name,max_rel_error,threshold,status,note\n";
    for (const auto& o : outcomes) {
      const bool ran = o.status != CheckStatus::kSkipped;
      os << o.check_name << ',' << (ran ? format_double(o.max_rel_error) : "") << ','
         << format_double(o.threshold) << ',' << to_string(o.status) << ',' << csv_quote(o.note) << '\n';
    }
    os << "# result = " << (ok ? "all checks passed" : "verification FAILED") << '\n';
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q, "deformation parameter q > 0, q != 1")->capture_default_str();
  sub->add_option("--l", cfg.l, "length parameter l != 0")->capture_default_str();
  sub->add_option("--lambda", cfg.lambda, "exponent lambda")->capture_default_str();
  sub->add_option("--dim", cfg.dim, "Fock-space truncation D")->capture_default_str();
  sub->add_option("--nmax", cfg.nmax, "highest level in the spectrum")->capture_default_str();
  sub->add_option("--z-re", cfg.z_re, "Re z")->capture_default_str();
  sub->add_option("--z-im", cfg.z_im, "Im z")->capture_default_str();
  sub->add_option("--x-min", cfg.x_min, "grid start in x = |z|^2")->capture_default_str();
  sub->add_option("--x-max", cfg.x_max, "grid end (default: half the radius, or 2 l^2 q^lambda)");
  sub->add_option("--points", cfg.points, "grid points")->capture_default_str();
  sub->add_flag("--log-grid", cfg.log_grid, "log-spaced grid");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::kCsv}, {"json", Format::kJson}}));
  sub->add_option("--tol", cfg.tol_specs, "override a check threshold, name=value")->take_all();
  sub->add_flag("--limit-q1", cfg.limit_q1, "set q = 1 + 1e-6 (canonical-limit cross-check)");
  sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  sub->add_option("--hbar", cfg.hbar)->capture_default_str();
  sub->add_option("--mass", cfg.mass)->capture_default_str();
  sub->add_option("--omega", cfg.omega)->capture_default_str();
  sub->add_option("--seed", cfg.seed, "recorded in the metadata; grids are deterministic")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for the (q; l, lambda)-deformed Heisenberg algebra", "qdeform"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "energies and uncertainties for n = 0..nmax");
  auto* coherent_cmd = app.add_subcommand("coherent", "truncated coherent-state amplitudes");
  auto* stats_cmd = app.add_subcommand("stats", "photon statistics and metric factor on an x grid");
  auto* verify_cmd = app.add_subcommand("verify", "run the identity checks");
  for (auto* sub : {spectrum_cmd, coherent_cmd, stats_cmd, verify_cmd}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cfg.hbar <= 0.0 || cfg.mass <= 0.0 || cfg.omega <= 0.0) {
      throw DomainError("--hbar, --mass and --omega must be positive");
    }
    std::ostringstream buffer;
    int code = kExitOk;
    if (*verify_cmd) {
      code = cmd_verify(cfg, buffer);
    } else {
      Table t;
      if (*spectrum_cmd) t = cmd_spectrum(cfg);
      if (*coherent_cmd) t = cmd_coherent(cfg);
      if (*stats_cmd) t = cmd_stats(cfg);
      emit(t, cfg.format, buffer);
    }
    if (cfg.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw DomainError("cannot open '" + cfg.out_path + "' for writing");
      file << buffer.str();
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qdeform
