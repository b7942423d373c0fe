#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homstress/config.hpp"
#include "homstress/constitutive.hpp"
#include "homstress/mesh.hpp"
#include "homstress/numfmt.hpp"
#include "homstress/phase.hpp"
#include "homstress/report.hpp"
#include "homstress/tensor.hpp"

namespace {

using namespace homstress;

/// A computed check came out wrong (distinct from bad input); exits with 4.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ReportValue vec_rv(const Vec3& v) {
  ReportValue arr = ReportValue::array();
  for (int i = 0; i < 3; ++i) arr.push_back(ReportValue::number(v[i]));
  return arr;
}

ReportValue mat_rv(const Mat3& m) {
  ReportValue rows = ReportValue::array();
  for (int i = 0; i < 3; ++i) {
    ReportValue row = ReportValue::array();
    for (int j = 0; j < 3; ++j) row.push_back(ReportValue::number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportValue sym_rv(const SymMat3& s) {
  ReportValue obj;
  obj["xx"] = ReportValue::number(s.xx);
  obj["yy"] = ReportValue::number(s.yy);
  obj["zz"] = ReportValue::number(s.zz);
  obj["xy"] = ReportValue::number(s.xy);
  obj["yz"] = ReportValue::number(s.yz);
  obj["xz"] = ReportValue::number(s.xz);
  return obj;
}

MaterialParams material_from(const Config& cfg) {
  return MaterialParams(cfg.get_double("mu"), cfg.get_double("mu_tilde"),
                        cfg.get_double("kappa"));
}

ReportValue material_rv(const MaterialParams& p) {
  ReportValue obj;
  obj["mu"] = ReportValue::number(p.mu);
  obj["mu_tilde"] = ReportValue::number(p.mu_tilde);
  obj["kappa"] = ReportValue::number(p.kappa);
  return obj;
}

/// Root-solve tolerance: config key, then the HOMSTRESS_TOL environment
/// variable, then the built-in default.
RootOptions root_options_from(const Config& cfg) {
  RootOptions opts;
  opts.grid_points = static_cast<int>(cfg.get_int_or("scan_grid", opts.grid_points));
  if (auto tol = cfg.find_double("tol_beta1")) {
    opts.beta1_tol = *tol;
  } else if (const char* env = std::getenv("HOMSTRESS_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw ConfigError("HOMSTRESS_TOL: not a positive number: '" + std::string(env) + "'");
    opts.beta1_tol = v;
  }
  if (!(opts.beta1_tol > 0.0)) throw ConfigError("tol_beta1 must be positive");
  if (opts.grid_points < 2 || opts.grid_points > 100000000)
    throw ConfigError("scan_grid must be between 2 and 1e8");
  return opts;
}

void require_known_keys(const Config& cfg, const std::vector<std::string>& known,
                        const std::string& command) {
  const auto unknown = cfg.unknown_keys(known);
  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << "unknown config key '" << unknown.front() << "' for command '" << command << "'";
    throw ConfigError(msg.str());
  }
}

const std::vector<std::string> kCommonKeys = {"mu", "mu_tilde", "kappa", "format", "out_dir"};

std::vector<std::string> with_common(std::initializer_list<const char*> extra) {
  std::vector<std::string> keys = kCommonKeys;
  for (const char* k : extra) keys.emplace_back(k);
  return keys;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path.string() + "'");
  out << text;
}

/// Prints the report to stdout and, when an output directory is given,
/// stores it there as report.json or report.csv.
void emit_report(const ReportValue& report, const std::string& format,
                 const std::string& out_dir) {
  const std::string text = format == "csv" ? serialize_csv(report) : serialize_json(report);
  std::cout << text;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text_file(std::filesystem::path(out_dir) / ("report." + format), text);
  }
}

struct PhaseSelection {
  double k = 0;
  bool at_root = false;
  int root_index = 0;
  double beta0 = 0;
  double beta1 = 0;
};

/// k comes either from an explicit `k =` key (any positive value, e.g. to
/// study off-root traction jumps) or from the root_index-th beta1-root.
PhaseSelection select_k(const Config& cfg, double s, double a, const MaterialParams& p) {
  PhaseSelection sel;
  if (cfg.has("k")) {
    sel.k = cfg.get_double("k");
    if (!(sel.k > 0.0)) throw ConfigError("k must be positive");
  } else {
    sel.at_root = true;
    sel.root_index = static_cast<int>(cfg.get_int_or("root_index", 0));
    const TwoPhaseState state = build_two_phase_state(s, a, sel.root_index, p,
                                                      root_options_from(cfg));
    sel.k = state.k;
  }
  const BetaCoeffs c = betas_model(phase_invariants(PhaseParams{sel.k, s, a}), p);
  sel.beta0 = c.beta0;
  sel.beta1 = c.beta1;
  return sel;
}

ReportValue phase_rv(const PhaseSelection& sel, double s, double a) {
  ReportValue obj;
  obj["a"] = ReportValue::number(a);
  obj["s"] = ReportValue::number(s);
  obj["k"] = ReportValue::number(sel.k);
  obj["at_root"] = ReportValue::boolean(sel.at_root);
  if (sel.at_root) obj["root_index"] = ReportValue::integer(sel.root_index);
  obj["beta0"] = ReportValue::number(sel.beta0);
  obj["beta1"] = ReportValue::number(sel.beta1);
  return obj;
}

int cmd_admissible(const Config& cfg, const std::string& format, const std::string& out_dir) {
  require_known_keys(cfg, with_common({"a"}), "admissible");
  const MaterialParams mat = material_from(cfg);
  const double a = cfg.get_double("a");
  const auto region = admissible_smax(a, mat);

  ReportValue rep;
  rep["command"] = ReportValue::text("admissible");
  rep["material"] = material_rv(mat);
  rep["a"] = ReportValue::number(a);
  rep["admissible"] = ReportValue::boolean(region.has_value());
  rep["mu_ratio"] = ReportValue::number(mat.mu / (3.0 * mat.mu_tilde));
  const double q = 3.0 - a * a - 1.0 / (a * a);
  if (q > 0.0) rep["mu_ratio_bound"] = ReportValue::number(std::pow(0.25 * q, 4.0 / 3.0));
  if (region) rep["s_max"] = ReportValue::number(region->s_max);
  emit_report(rep, format, out_dir);
  return 0;
}

int cmd_two_phase(const Config& cfg, const std::string& format, const std::string& out_dir) {
  require_known_keys(cfg, with_common({"a", "s", "tol_beta1", "scan_grid"}), "two-phase");
  const MaterialParams mat = material_from(cfg);
  const double a = cfg.get_double("a");
  const double s = cfg.get_double("s");
  const RootOptions opts = root_options_from(cfg);
  const RootSearch rs = find_k_roots(s, a, mat, opts);
  const auto region = admissible_smax(a, mat);

  ReportValue rep;
  rep["command"] = ReportValue::text("two-phase");
  rep["material"] = material_rv(mat);
  rep["a"] = ReportValue::number(a);
  rep["s"] = ReportValue::number(s);
  rep["mu_ratio"] = ReportValue::number(region->mu_ratio);
  rep["mu_ratio_bound"] = ReportValue::number(region->mu_ratio_bound);
  rep["s_max"] = ReportValue::number(region->s_max);
  rep["root_count"] = ReportValue::integer(static_cast<std::int64_t>(rs.roots.size()));
  if (!rs.diagnostic.empty()) rep["diagnostic"] = ReportValue::text(rs.diagnostic);

  ReportValue roots = ReportValue::array();
  for (const double k : rs.roots) {
    const PhaseParams pp{k, s, a};
    const auto [f, f_hat] = phase_gradients(pp);
    const SymMat3 b = left_cauchy_green(f);
    const SymMat3 b_hat = left_cauchy_green(f_hat);
    const BetaCoeffs c = betas_model(invariants(b), mat);
    const auto residuals = stress_equality_residuals(b, b_hat, mat);
    const RankOneCondition cond = rank_one_condition(f, f_hat);

    ReportValue entry;
    entry["k"] = ReportValue::number(k);
    entry["beta0"] = ReportValue::number(c.beta0);
    entry["beta1"] = ReportValue::number(c.beta1);
    entry["sigma"] = sym_rv(cauchy_stress(b, mat));
    ReportValue res = ReportValue::array();
    double res_max = 0.0;
    for (const double r : residuals) {
      res.push_back(ReportValue::number(r));
      res_max = std::max(res_max, r);
    }
    entry["stress_residuals"] = std::move(res);
    entry["stress_residual_max"] = ReportValue::number(res_max);

    ReportValue rank_one;
    rank_one["holds"] = ReportValue::boolean(cond.holds);
    rank_one["residual_2x2"] = ReportValue::number(cond.residual);
    if (cond.decomposition && !cond.decomposition->degenerate) {
      rank_one["normal"] = vec_rv(cond.decomposition->n);
      rank_one["amplitude"] = vec_rv(cond.decomposition->a);
    }
    entry["rank_one"] = std::move(rank_one);
    roots.push_back(std::move(entry));
  }
  rep["roots"] = std::move(roots);
  emit_report(rep, format, out_dir);
  return 0;
}

int cmd_mesh(const Config& cfg, const std::string& format, const std::string& out_dir) {
  require_known_keys(cfg,
                     with_common({"a", "s", "k", "root_index", "tol_beta1", "scan_grid", "m",
                                  "dims_x", "dims_y", "dims_z", "plane_offset", "det_constant",
                                  "det_include_boundary"}),
                     "mesh");
  if (out_dir.empty()) throw ConfigError("the mesh command requires --out <dir>");
  const MaterialParams mat = material_from(cfg);
  const double a = cfg.get_double("a");
  const double s = cfg.get_double("s");
  const long long m_ll = cfg.get_int_or("m", 2);
  if (m_ll < 1 || m_ll > 64) throw ConfigError("m must be between 1 and 64");
  const int m = static_cast<int>(m_ll);
  const std::array<double, 3> dims{cfg.get_double_or("dims_x", 1.0),
                                   cfg.get_double_or("dims_y", 1.0),
                                   cfg.get_double_or("dims_z", 1.0)};

  const PhaseSelection sel = select_k(cfg, s, a, mat);
  const auto [f, f_hat] = phase_gradients(PhaseParams{sel.k, s, a});
  const CuboidPartition part = kuhn_partition(m, dims);
  const double plane_offset =
      cfg.get_double_or("plane_offset", static_cast<double>(m / 2) * dims[1] / m);
  const PiecewiseAffineField field = build_two_phase_field(part, f, f_hat, plane_offset);

  const double continuity = check_continuity(field);
  const double cont_scale =
      std::max({dims[0], dims[1], dims[2]}) * std::max({f.max_abs(), f_hat.max_abs(), 1.0});
  const double cont_tol = 1e-12 * std::max(1.0, cont_scale);
  const TractionCheck traction = traction_and_equilibrium_check(field, mat);
  const DofAccount acc = dof_accounting(m);

  const double det_target = cfg.get_double_or("det_constant", sel.k);
  const bool det_all = cfg.get_int_or("det_include_boundary", 0) != 0;
  const auto det_res = det_constraint_residuals(field, det_target, det_all);
  double det_max = 0.0;
  for (const double r : det_res) det_max = std::max(det_max, std::fabs(r));

  double volume = 0.0;
  for (const auto& tet : part.tets)
    volume += tet_volume(part.vertices[static_cast<size_t>(tet[0])],
                         part.vertices[static_cast<size_t>(tet[1])],
                         part.vertices[static_cast<size_t>(tet[2])],
                         part.vertices[static_cast<size_t>(tet[3])]);

  ReportValue rep;
  rep["command"] = ReportValue::text("mesh");
  rep["material"] = material_rv(mat);
  rep["phase"] = phase_rv(sel, s, a);
  {
    ReportValue mesh;
    mesh["m"] = ReportValue::integer(m);
    ReportValue darr = ReportValue::array();
    for (const double d : dims) darr.push_back(ReportValue::number(d));
    mesh["dims"] = std::move(darr);
    mesh["plane_offset"] = ReportValue::number(plane_offset);
    mesh["tet_count"] = ReportValue::integer(static_cast<std::int64_t>(part.tets.size()));
    mesh["vertex_count"] = ReportValue::integer(static_cast<std::int64_t>(part.vertices.size()));
    mesh["volume_sum"] = ReportValue::number(volume);
    rep["mesh"] = std::move(mesh);
  }
  {
    ReportValue cont;
    cont["max_jump"] = ReportValue::number(continuity);
    cont["tol"] = ReportValue::number(cont_tol);
    cont["ok"] = ReportValue::boolean(continuity <= cont_tol);
    rep["continuity"] = std::move(cont);
  }
  {
    ReportValue tr;
    tr["max_jump"] = ReportValue::number(traction.max_traction_jump);
    tr["sigma_scale"] = ReportValue::number(traction.sigma_scale);
    tr["equilibrium_ok"] = ReportValue::boolean(traction.equilibrium_ok);
    if (!sel.at_root)
      tr["expected_offroot_jump"] =
          ReportValue::number(2.0 * std::fabs(sel.beta1) * s * a * a);
    rep["traction"] = std::move(tr);
  }
  {
    ReportValue dof;
    dof["total"] = ReportValue::integer(acc.total);
    dof["boundary_eqs"] = ReportValue::integer(acc.boundary_eqs);
    dof["interior"] = ReportValue::integer(acc.interior);
    dof["coefficients"] = ReportValue::integer(acc.coefficients);
    dof["det_constraints_needed"] = ReportValue::integer(acc.det_constraints_needed);
    dof["identity_ok"] = ReportValue::boolean(acc.total - acc.boundary_eqs == acc.interior);
    rep["dof"] = std::move(dof);
  }
  {
    ReportValue det;
    det["d"] = ReportValue::number(det_target);
    det["include_boundary"] = ReportValue::boolean(det_all);
    det["count"] = ReportValue::integer(static_cast<std::int64_t>(det_res.size()));
    det["max_abs"] = ReportValue::number(det_max);
    rep["det_residuals"] = std::move(det);
  }

  std::filesystem::create_directories(out_dir);
  {
    std::ostringstream os;
    write_tetmesh(os, part);
    write_text_file(std::filesystem::path(out_dir) / "mesh.tetmesh", os.str());
  }
  {
    std::ostringstream os;
    write_field(os, field);
    write_text_file(std::filesystem::path(out_dir) / "field.tetmesh", os.str());
  }
  ReportValue files = ReportValue::array();
  files.push_back(ReportValue::text("mesh.tetmesh"));
  files.push_back(ReportValue::text("field.tetmesh"));
  rep["files"] = std::move(files);

  emit_report(rep, format, out_dir);
  if (continuity > cont_tol)
    throw CheckFailure("continuity check failed: max jump " + sig17(continuity));
  if (sel.at_root && !traction.equilibrium_ok)
    throw CheckFailure("equilibrium check failed at a beta1-root: traction jump " +
                       sig17(traction.max_traction_jump));
  return 0;
}

int cmd_scan(const Config& cfg, const std::string& out_dir) {
  require_known_keys(cfg,
                     with_common({"scan_kind", "scan_min", "scan_max", "scan_points", "a", "s",
                                  "k", "root_index", "tol_beta1", "scan_grid", "probe_points",
                                  "probe_t_min", "probe_t_max"}),
                     "scan");
  const MaterialParams mat = material_from(cfg);
  const std::string kind = cfg.get_string_or("scan_kind", "beta1");
  std::ostringstream csv;

  if (kind == "beta1") {
    const double a = cfg.get_double("a");
    const double s = cfg.get_double("s");
    const double lo = cfg.get_double_or("scan_min", 1e-4);
    const double hi = cfg.get_double_or("scan_max", 1.0 - 1e-4);
    const long long points = cfg.get_int_or("scan_points", 1001);
    if (points < 0 || points > 10000000) throw ConfigError("scan_points out of range");
    if (points > 1 && !(hi > lo)) throw ConfigError("scan_max must exceed scan_min");
    csv << "# k,beta1\n";
    for (long long i = 0; i < points; ++i) {
      const double k = points == 1 ? lo : lo + i * (hi - lo) / (points - 1);
      const double b1 = betas_model(phase_invariants(PhaseParams{k, s, a}), mat).beta1;
      csv << sig17(k) << ',' << sig17(b1) << '\n';
    }
  } else if (kind == "admissible") {
    const double lo = cfg.get_double_or("scan_min", 0.5);
    const double hi = cfg.get_double_or("scan_max", 2.0);
    const long long points = cfg.get_int_or("scan_points", 151);
    if (points < 0 || points > 10000000) throw ConfigError("scan_points out of range");
    if (points > 1 && !(hi > lo)) throw ConfigError("scan_max must exceed scan_min");
    csv << "# a,admissible,s_max\n";
    for (long long i = 0; i < points; ++i) {
      const double a = points == 1 ? lo : lo + i * (hi - lo) / (points - 1);
      const auto region = admissible_smax(a, mat);
      csv << sig17(a) << ',' << (region ? 1 : 0) << ',';
      if (region) csv << sig17(region->s_max);
      csv << '\n';
    }
  } else if (kind == "energy") {
    const double a = cfg.get_double("a");
    const double s = cfg.get_double("s");
    const PhaseSelection sel = select_k(cfg, s, a, mat);
    const auto [f, f_hat] = phase_gradients(PhaseParams{sel.k, s, a});
    const Mat3 d = f_hat - f;
    const double lo = cfg.get_double_or("probe_t_min", 0.0);
    const double hi = cfg.get_double_or("probe_t_max", 1.0);
    const long long points = cfg.get_int_or("probe_points", 2001);
    if (points < 0 || points > 10000000) throw ConfigError("probe_points out of range");
    if (points > 1 && !(hi > lo)) throw ConfigError("probe_t_max must exceed probe_t_min");
    csv << "# t,g,d2\n";
    std::vector<double> g(static_cast<size_t>(points));
    const double h = points > 1 ? (hi - lo) / (points - 1) : 0.0;
    for (long long i = 0; i < points; ++i) {
      const double t = points == 1 ? lo : lo + i * h;
      g[static_cast<size_t>(i)] = energy(f + t * d, mat);
    }
    for (long long i = 0; i < points; ++i) {
      const double t = points == 1 ? lo : lo + i * h;
      csv << sig17(t) << ',' << sig17(g[static_cast<size_t>(i)]) << ',';
      if (i > 0 && i + 1 < points)
        csv << sig17((g[static_cast<size_t>(i + 1)] - 2.0 * g[static_cast<size_t>(i)] +
                      g[static_cast<size_t>(i - 1)]) /
                     (h * h));
      csv << '\n';
    }
  } else {
    throw ConfigError("scan_kind must be one of beta1, admissible, energy");
  }

  std::cout << csv.str();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text_file(std::filesystem::path(out_dir) / "scan.csv", csv.str());
  }
  return 0;
}

int cmd_probe_convexity(const Config& cfg, const std::string& format,
                        const std::string& out_dir) {
  require_known_keys(cfg,
                     with_common({"a", "s", "k", "root_index", "tol_beta1", "scan_grid",
                                  "probe_points", "probe_t_min", "probe_t_max"}),
                     "probe-convexity");
  const MaterialParams mat = material_from(cfg);
  const double a = cfg.get_double("a");
  const double s = cfg.get_double("s");
  const PhaseSelection sel = select_k(cfg, s, a, mat);
  const auto [f, f_hat] = phase_gradients(PhaseParams{sel.k, s, a});
  const RankOneCondition cond = rank_one_condition(f, f_hat);

  Vec3 dir_a{0, 0, 0}, dir_n{0, 1, 0};
  if (cond.decomposition && !cond.decomposition->degenerate) {
    dir_a = cond.decomposition->a;
    dir_n = cond.decomposition->n;
  }

  TGrid grid;
  grid.t_min = cfg.get_double_or("probe_t_min", 0.0);
  grid.t_max = cfg.get_double_or("probe_t_max", 1.0);
  const long long points = cfg.get_int_or("probe_points", 2001);
  if (points < 3 || points > 10000000) throw ConfigError("probe_points must be in [3, 1e7]");
  grid.points = static_cast<int>(points);

  const auto witness = rank_one_convexity_probe(mat, f, dir_a, dir_n, grid);

  ReportValue rep;
  rep["command"] = ReportValue::text("probe-convexity");
  rep["material"] = material_rv(mat);
  rep["phase"] = phase_rv(sel, s, a);
  {
    ReportValue dir;
    dir["amplitude"] = vec_rv(dir_a);
    dir["normal"] = vec_rv(dir_n);
    rep["direction"] = std::move(dir);
  }
  {
    ReportValue g;
    g["t_min"] = ReportValue::number(grid.t_min);
    g["t_max"] = ReportValue::number(grid.t_max);
    g["points"] = ReportValue::integer(grid.points);
    rep["grid"] = std::move(g);
  }
  {
    ReportValue w;
    w["found"] = ReportValue::boolean(witness.has_value());
    if (witness) {
      w["t"] = ReportValue::number(witness->t);
      w["second_difference"] = ReportValue::number(witness->second_difference);
    }
    rep["witness"] = std::move(w);
  }
  emit_report(rep, format, out_dir);
  if (!witness)
    throw CheckFailure("no rank-one-convexity violation found on the grid; flagged for review");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase deformations under homogeneous Cauchy stress"};
  app.require_subcommand(1);

  std::string config_path, out_dir_flag, format_flag;
  const char* kNames[] = {"admissible", "two-phase", "mesh", "scan", "probe-convexity"};
  const char* kDescs[] = {"Admissibility region and s_max for a given a",
                          "beta1-roots, common stress and rank-one data",
                          "Two-phase piecewise-affine field on a cuboid partition, with checks",
                          "CSV scans: beta1(k), admissibility over a, energy along the segment",
                          "Search the laminate segment for a convexity violation"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(kNames[i], kDescs[i]);
    sub->add_option("--config", config_path, "Path to key = value config file")->required();
    sub->add_option("--out", out_dir_flag, "Directory for reports and mesh files");
    sub->add_option("--format", format_flag, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    const Config cfg = Config::parse_file(config_path);
    const std::string format = !format_flag.empty() ? format_flag
                                                    : cfg.get_string_or("format", "json");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    const std::string out_dir =
        !out_dir_flag.empty() ? out_dir_flag : cfg.get_string_or("out_dir", "");

    if (app.got_subcommand("admissible")) {
      code = cmd_admissible(cfg, format, out_dir);
    } else if (app.got_subcommand("two-phase")) {
      code = cmd_two_phase(cfg, format, out_dir);
    } else if (app.got_subcommand("mesh")) {
      code = cmd_mesh(cfg, format, out_dir);
    } else if (app.got_subcommand("scan")) {
      code = cmd_scan(cfg, out_dir);
    } else {
      code = cmd_probe_convexity(cfg, format, out_dir);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    code = 2;
  } catch (const InadmissibleError& e) {
    std::cerr << "inadmissible: " << e.what() << '\n';
    code = 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    code = 4;
  }

  // Timing goes to stderr only; reports stay byte-identical across runs.
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);
  std::fprintf(stderr, "elapsed_ms=%.3f\n", elapsed.count());
  return code;
}
