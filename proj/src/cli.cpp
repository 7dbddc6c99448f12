#include "pseudoherm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/fv_kleingordon.hpp"
#include "pseudoherm/io.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/pt_algebra.hpp"
#include "pseudoherm/spectral_phase.hpp"

namespace pseudoherm::cli {

namespace {

using nlohmann::json;
using io::format_double;

// Bad flag combinations detected by the front end (exit 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::string output_path;
  Format format = Format::Csv;
};

struct CommandOutput {
  std::string csv;
  json data;
  std::string summary;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  return row + "\n";
}

std::string spectrum_text(const ComplexVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i].real());
    if (v[i].imag() != 0.0) s += (v[i].imag() < 0 ? "-" : "+") + format_double(std::abs(v[i].imag())) + "i";
  }
  return s + "]";
}

/// --a/--b/--sign toy parameters or a --matrix file.
struct MatrixSource {
  double a = 1.0;
  double b = 0.0;
  std::string sign = "pt";
  std::string matrix_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "toy diagonal parameter a");
    cmd->add_option("--b", b, "toy coupling b");
    cmd->add_option("--sign", sign, "toy variant: pt (non-Hermitian) or hermitian")
        ->check(CLI::IsMember({"pt", "hermitian"}));
    cmd->add_option("--matrix", matrix_path, "matrix JSON file (overrides --a/--b)");
  }

  bool is_toy() const { return matrix_path.empty(); }

  ToyParams toy() const {
    return {a, b, sign == "hermitian" ? ToySign::HermitianPlus : ToySign::PtMinus};
  }

  ComplexMatrix matrix() const {
    return is_toy() ? toy_hamiltonian(toy()) : io::parse_matrix_file(matrix_path);
  }
};

struct ClassifyFlags {
  ClassifyTolerances tols;
  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-imag", tols.imag, "relative imaginary-part tolerance");
    cmd->add_option("--tol-pair", tols.pair, "relative conjugate-pairing tolerance");
    cmd->add_option("--tol-defect", tols.defect, "eigenvector coalescence angle (rad)");
  }
};

std::vector<double> grid_from(const std::vector<double>& explicit_grid, double lo, double hi,
                              std::size_t n, const char* name) {
  if (!explicit_grid.empty()) return explicit_grid;
  if (n == 0) throw ValidationError(std::string(name) + ": --n must be >= 1");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw ValidationError(std::string(name) + ": max must exceed min");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

ComplexVector parse_state(const std::vector<double>& flat, Eigen::Index n, std::uint64_t seed) {
  if (flat.empty()) return random_complex_vector(n, seed);
  if (static_cast<Eigen::Index>(flat.size()) != 2 * n) {
    throw ValidationError("--psi needs " + std::to_string(2 * n) +
                          " numbers (re,im per component)");
  }
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = Complex(flat[static_cast<std::size_t>(2 * i)], flat[static_cast<std::size_t>(2 * i + 1)]);
  }
  return v;
}

Complex parse_complex(const std::vector<double>& pair, const char* name) {
  if (pair.size() == 1) return {pair[0], 0.0};
  if (pair.size() != 2) throw ValidationError(std::string(name) + " takes re[,im]");
  return {pair[0], pair[1]};
}

// ---------------------------------------------------------------------------
// Commands

CommandOutput run_classify(const MatrixSource& src, const ClassifyFlags& flags) {
  const auto report = classify(src.matrix(), flags.tols);
  CommandOutput out;
  out.csv = "phase,index,re,im\n";
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    out.csv += csv_row({std::string(to_string(report.phase)), std::to_string(i),
                        format_double(report.eigenvalues[i].real()),
                        format_double(report.eigenvalues[i].imag())});
  }
  json pairing = json::array();
  for (const auto& [i, j] : report.pairing) pairing.push_back({i, j});
  json defect = json::array();
  for (const auto& d : report.defect) {
    defect.push_back({{"eigenvalue", complex_json(d.eigenvalue)},
                      {"geometric", d.geometric},
                      {"algebraic", d.algebraic}});
  }
  out.data = {{"phase", to_string(report.phase)},
              {"eigenvalues", complex_list(report.eigenvalues)},
              {"pairing", pairing},
              {"unpaired", report.unpaired},
              {"defect", defect},
              {"min_vector_angle", report.min_vector_angle},
              {"eig_residual", report.eig_residual},
              {"convergence_failure", report.convergence_failure},
              {"diagnostic", report.diagnostic}};
  out.summary = std::string(to_string(report.phase)) + " eigenvalues=" +
                spectrum_text(report.eigenvalues);
  return out;
}

CommandOutput run_spectrum(const MatrixSource& src) {
  const ComplexMatrix H = src.matrix();
  const EigenSystem es = eig(H);
  std::optional<std::pair<Complex, Complex>> closed;
  if (src.is_toy()) closed = toy_energies(src.toy());

  CommandOutput out;
  out.csv = closed ? "index,re,im,closed_re,closed_im\n" : "index,re,im\n";
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
    std::string row = std::to_string(i) + "," + format_double(es.eigenvalues[i].real()) + "," +
                      format_double(es.eigenvalues[i].imag());
    if (closed) {
      // eig() orders descending; the closed form lists (-root, +root).
      const Complex c = i == 0 ? closed->second : closed->first;
      row += "," + format_double(c.real()) + "," + format_double(c.imag());
    }
    out.csv += row + "\n";
  }
  out.data = {{"eigenvalues", complex_list(es.eigenvalues)},
              {"residual", es.residual},
              {"biorthogonality_error", es.biorthogonality_error},
              {"vector_condition", std::isfinite(es.vector_condition) ? json(es.vector_condition)
                                                                      : json("inf")}};
  if (closed) {
    out.data["closed_form"] = json::array({complex_json(closed->first), complex_json(closed->second)});
  }
  out.summary = "spectrum " + spectrum_text(es.eigenvalues) + " residual=" + format_double(es.residual);
  return out;
}

CommandOutput run_metric(const MatrixSource& src, std::vector<int> signs) {
  const ComplexMatrix H = src.matrix();
  if (signs.empty()) signs.assign(static_cast<std::size_t>(H.rows()), 1);
  const auto metric = build_metric(H, signs);
  std::optional<double> herm;
  if (metric.min_eigenvalue > 0.0) herm = verify_hermitization(H, metric).hermiticity_residual;

  CommandOutput out;
  out.csv = "row,col,re,im\n";
  for (Eigen::Index i = 0; i < metric.eta.rows(); ++i) {
    for (Eigen::Index j = 0; j < metric.eta.cols(); ++j) {
      out.csv += csv_row({std::to_string(i), std::to_string(j), format_double(metric.eta(i, j).real()),
                          format_double(metric.eta(i, j).imag())});
    }
  }
  out.data = io::matrix_to_json(metric.eta);
  out.data["signs"] = metric.signs;
  out.data["intertwining_residual"] = metric.intertwining_residual;
  out.data["min_eigenvalue"] = metric.min_eigenvalue;
  out.data["cond"] = metric.cond;
  out.data["vector_condition"] = metric.vector_condition;
  out.data["near_defective"] = metric.near_defective;
  if (herm) out.data["hermiticity_residual"] = *herm;
  out.summary = "metric min_eig=" + format_double(metric.min_eigenvalue) + " cond=" +
                format_double(metric.cond) + " residual=" + format_double(metric.intertwining_residual);
  return out;
}

CommandOutput run_metric_profile(double a, const std::vector<double>& b_values) {
  const auto profile = metric_singularity_profile(a, b_values);
  CommandOutput out;
  out.csv = "b,cond,min_eig,residual\n";
  out.data = json::array();
  for (const auto& e : profile) {
    out.csv += csv_row({format_double(e.b), format_double(e.cond), format_double(e.min_eigenvalue),
                        format_double(e.residual)});
    out.data.push_back({{"b", e.b},
                        {"cond", e.cond},
                        {"min_eig", e.min_eigenvalue},
                        {"residual", e.residual},
                        {"near_defective", e.near_defective}});
  }
  out.summary = "metric-profile points=" + std::to_string(profile.size()) + " cond_max=" +
                (profile.empty() ? std::string("n/a") : format_double(profile.back().cond));
  return out;
}

struct EvolveFlags {
  std::optional<double> b_end;
  std::vector<int> parity;
  double t_final = 1.0;
  std::size_t steps = 1000;
  std::vector<double> psi;
};

CommandOutput run_evolve(const MatrixSource& src, const EvolveFlags& f, std::uint64_t seed) {
  if (f.steps == 0) throw ValidationError("evolve: --steps must be >= 1");
  if (!(f.t_final > 0.0)) throw ValidationError("evolve: --t-final must be positive");

  HamiltonianPath path;
  std::optional<Involution> P;
  Eigen::Index n = 2;
  if (src.is_toy()) {
    const ToyParams base = src.toy();
    const double b0 = base.b;
    const double b1 = f.b_end.value_or(b0);
    const double T = f.t_final;
    path = [base, b0, b1, T](double t) {
      ToyParams p = base;
      p.b = b0 + (b1 - b0) * t / T;
      return toy_hamiltonian(p);
    };
    P = f.parity.empty() ? Involution::sigma3() : Involution::diagonal(f.parity);
  } else {
    if (f.b_end) throw ValidationError("evolve: --b-end only applies to the toy Hamiltonian");
    const ComplexMatrix H = io::parse_matrix_file(src.matrix_path);
    n = H.rows();
    if (f.parity.empty()) throw ValidationError("evolve: --parity is required with --matrix");
    P = Involution::diagonal(f.parity);
    path = [H](double) { return H; };
  }
  if (P->dim() != n) throw ValidationError("evolve: --parity length does not match the Hamiltonian");

  const ComplexVector psi0 = parse_state(f.psi, n, seed);
  EvolveOptions options;
  options.record_hamiltonians = false;
  const auto traj = evolve(path, psi0, uniform_grid(0.0, f.t_final, f.steps), *P, options);

  CommandOutput out;
  std::string header = "t";
  for (Eigen::Index i = 0; i < n; ++i) {
    header += ",psi" + std::to_string(i) + "_re,psi" + std::to_string(i) + "_im";
  }
  header += ",pn_re,pn_im";
  for (Eigen::Index i = 0; i < n; ++i) {
    header += ",E" + std::to_string(i) + "_re,E" + std::to_string(i) + "_im";
  }
  std::ostringstream csv;
  csv << header << "\n";
  json times = json::array();
  json states = json::array();
  json pns = json::array();
  json energies = json::array();
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    csv << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      csv << ',' << format_double(traj.states[k][i].real()) << ','
          << format_double(traj.states[k][i].imag());
    }
    csv << ',' << format_double(traj.pseudo_norms[k].real()) << ','
        << format_double(traj.pseudo_norms[k].imag());
    for (Eigen::Index i = 0; i < n; ++i) {
      csv << ',' << format_double(traj.energies[k][i].real()) << ','
          << format_double(traj.energies[k][i].imag());
    }
    csv << '\n';
    times.push_back(traj.times[k]);
    states.push_back(complex_list(traj.states[k]));
    pns.push_back(complex_json(traj.pseudo_norms[k]));
    energies.push_back(complex_list(traj.energies[k]));
  }
  out.csv = csv.str();
  out.data = {{"t", times}, {"states", states}, {"pseudo_norm", pns}, {"energies", energies}};
  const double growth = traj.states.back().norm() / traj.states.front().norm();
  out.summary = "evolve steps=" + std::to_string(f.steps) + " pseudo_norm_drift=" +
                format_double(pseudo_norm_drift(traj)) + " norm_growth=" + format_double(growth);
  return out;
}

CommandOutput run_sweep(double a, const std::vector<double>& b_grid, const ClassifyFlags& flags) {
  const auto result = sweep(a, b_grid, flags.tols);
  CommandOutput out;
  out.csv = "a,b,phase,re1,im1,re2,im2,gap\n";
  json points = json::array();
  for (const auto& p : result.points) {
    const Complex l1 = p.eigenvalues[0];
    const Complex l2 = p.eigenvalues[1];
    out.csv += csv_row({format_double(p.a), format_double(p.b), std::string(to_string(p.phase)),
                        format_double(l1.real()), format_double(l1.imag()), format_double(l2.real()),
                        format_double(l2.imag()), format_double(p.gap)});
    points.push_back({{"a", p.a},
                      {"b", p.b},
                      {"phase", to_string(p.phase)},
                      {"eigenvalues", complex_list(p.eigenvalues)},
                      {"gap", p.gap}});
  }
  json transitions = json::array();
  std::string summary = "sweep points=" + std::to_string(result.points.size()) + " transitions=";
  for (const auto& t : result.transitions) {
    transitions.push_back({{"b_lower", result.points[t.lower].b},
                           {"b_upper", result.points[t.upper].b},
                           {"from", to_string(t.from)},
                           {"to", to_string(t.to)}});
    summary += "[" + format_double(result.points[t.lower].b) + "," +
               format_double(result.points[t.upper].b) + "]";
  }
  if (result.transitions.empty()) summary += "none";
  out.data = {{"points", points}, {"transitions", transitions}};
  out.summary = summary;
  return out;
}

CommandOutput run_locate(double a, double b_lo, double b_hi, double tol) {
  const double b_star = locate_exceptional(a, b_lo, b_hi, tol);
  CommandOutput out;
  out.csv = "a,b_star\n" + csv_row({format_double(a), format_double(b_star)});
  out.data = {{"a", a}, {"b_lo", b_lo}, {"b_hi", b_hi}, {"tol", tol}, {"b_star", b_star}};
  out.summary = "b* = " + format_double(b_star);
  return out;
}

CommandOutput run_fv_dispersion(double k_min, double k_max, std::size_t n) {
  const auto ks = grid_from({}, k_min, k_max, n, "fv-dispersion");
  CommandOutput out;
  out.csv = "k,minus_omega,plus_omega\n";
  out.data = json::array();
  for (double k : ks) {
    const auto [lo, hi] = fv::dispersion(k);
    out.csv += csv_row({format_double(k), format_double(lo), format_double(hi)});
    out.data.push_back({{"k", k}, {"minus_omega", lo}, {"plus_omega", hi}});
  }
  out.summary = "fv-dispersion points=" + std::to_string(ks.size());
  return out;
}

std::string state_csv(const fv::FvState& s) {
  std::string csv = "k,phi_re,phi_im,chi_re,chi_im\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    csv += csv_row({format_double(s.grid.k_values()[i]), format_double(s.phi[j].real()),
                    format_double(s.phi[j].imag()), format_double(s.chi[j].real()),
                    format_double(s.chi[j].imag())});
  }
  return csv;
}

json state_json(const fv::FvState& s) {
  return {{"k", s.grid.k_values()},
          {"weights", s.grid.weights()},
          {"phi", complex_list(s.phi)},
          {"chi", complex_list(s.chi)}};
}

struct FvEvolveFlags {
  std::optional<double> k_min;
  double k_max = 10.0;
  std::size_t n = 256;
  double t_final = 1.0;
  std::size_t steps = 1000;
  std::string init = "gaussian";
  double k0 = 0.0;
  double width = 1.0;
  std::string state_out;
  std::string position_out;
  double x_max = 10.0;
  std::size_t x_points = 0;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file " + path);
  f << content;
  if (!f) throw ValidationError("failed writing " + path);
}

CommandOutput run_fv_evolve(const FvEvolveFlags& f, const RunConfig& cfg) {
  if (f.steps == 0) throw ValidationError("fv-evolve: --steps must be >= 1");
  const auto grid = fv::MomentumGrid::uniform(f.k_min.value_or(-f.k_max), f.k_max, f.n);
  const fv::FvState s0 = f.init == "random" ? fv::random_state(grid, cfg.seed)
                                            : fv::gaussian_packet(grid, f.k0, f.width);
  const auto run = fv::fv_evolve(s0, f.t_final, f.steps, f.steps);
  const fv::FvState& final_state = run.snapshots.back();

  CommandOutput out;
  out.csv = "t,Q\n";
  json charges = json::array();
  double drift = 0.0;
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    out.csv += csv_row({format_double(run.times[i]), format_double(run.charges[i])});
    charges.push_back({run.times[i], run.charges[i]});
    drift = std::max(drift, std::abs(run.charges[i] - run.charges.front()));
  }
  if (run.charges.front() != 0.0) drift /= std::abs(run.charges.front());
  out.data = {{"charges", charges}, {"final_state", state_json(final_state)}};

  if (!f.state_out.empty()) {
    write_file(f.state_out,
               cfg.format == Format::Json ? state_json(final_state).dump(2) + "\n" : state_csv(final_state));
  }
  if (!f.position_out.empty()) {
    if (f.x_points == 0) throw ValidationError("fv-evolve: --position-out needs --x-points >= 1");
    const auto xs = grid_from({}, -f.x_max, f.x_max, f.x_points, "fv-evolve");
    const ComplexVector field = fv::position_synthesis(final_state, xs);
    std::string csv = "x,psi_re,psi_im\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Complex z = field[static_cast<Eigen::Index>(i)];
      csv += csv_row({format_double(xs[i]), format_double(z.real()), format_double(z.imag())});
    }
    write_file(f.position_out, csv);
  }
  out.summary = "fv-evolve modes=" + std::to_string(grid.size()) + " steps=" +
                std::to_string(f.steps) + " Q0=" + format_double(run.charges.front()) +
                " charge_drift=" + format_double(drift);
  return out;
}

CommandOutput run_kg_check(Complex psi0, Complex psi_dot0, double k, double t_final,
                           std::size_t steps) {
  if (steps == 0) throw ValidationError("kg-check: --steps must be >= 1");
  const double residual = fv::kg_consistency(psi0, psi_dot0, k, t_final, steps);
  CommandOutput out;
  out.csv = "k,t_final,steps,residual\n" +
            csv_row({format_double(k), format_double(t_final), std::to_string(steps),
                     format_double(residual)});
  out.data = {{"k", k},
              {"psi0", complex_json(psi0)},
              {"psi_dot0", complex_json(psi_dot0)},
              {"t_final", t_final},
              {"steps", steps},
              {"residual", residual}};
  out.summary = "kg-check residual=" + format_double(residual);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for pseudo-Hermitian and PT-symmetric Hamiltonians", "pseudoherm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", PSEUDOHERM_VERSION);

  RunConfig cfg;
  std::string format = "csv";
  app.add_option("--seed", cfg.seed, "seed for random initial data");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.output_path, "output file (default: stdout)");

  MatrixSource src;
  ClassifyFlags cflags;

  auto* classify_cmd = app.add_subcommand("classify", "classify the spectral regime");
  src.attach(classify_cmd);
  cflags.attach(classify_cmd);

  MatrixSource spec_src;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues with closed-form comparison");
  spec_src.attach(spectrum_cmd);

  MatrixSource metric_src;
  std::vector<int> signs;
  auto* metric_cmd = app.add_subcommand("metric", "build a metric operator");
  metric_src.attach(metric_cmd);
  metric_cmd->add_option("--signs", signs, "quasi-parity signs, e.g. 1,-1")->delimiter(',');

  double profile_a = 1.0;
  std::vector<double> profile_b;
  double profile_b_min = 0.0;
  double profile_b_max = 0.999;
  std::size_t profile_n = 50;
  auto* profile_cmd = app.add_subcommand("metric-profile", "metric condition number versus b");
  profile_cmd->add_option("--a", profile_a, "toy parameter a");
  profile_cmd->add_option("--b-values", profile_b, "explicit b values")->delimiter(',');
  profile_cmd->add_option("--b-min", profile_b_min);
  profile_cmd->add_option("--b-max", profile_b_max);
  profile_cmd->add_option("--n", profile_n, "number of b values");

  MatrixSource evolve_src;
  EvolveFlags eflags;
  auto* evolve_cmd = app.add_subcommand("evolve", "pseudo-unitary time evolution");
  evolve_src.attach(evolve_cmd);
  evolve_cmd->add_option("--b-end", eflags.b_end, "linear ramp of b to this value at t-final");
  evolve_cmd->add_option("--parity", eflags.parity, "diagonal involution signs")->delimiter(',');
  evolve_cmd->add_option("--t-final", eflags.t_final);
  evolve_cmd->add_option("--steps", eflags.steps);
  evolve_cmd->add_option("--psi", eflags.psi, "initial state re0,im0,re1,im1,... (default: seeded)")
      ->delimiter(',');

  double sweep_a = 1.0;
  std::vector<double> sweep_grid;
  double sweep_b_min = 0.0;
  double sweep_b_max = 2.0;
  std::size_t sweep_n = 201;
  ClassifyFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "phase diagram along b");
  sweep_cmd->add_option("--a", sweep_a);
  sweep_cmd->add_option("--b-grid", sweep_grid, "explicit monotone b grid")->delimiter(',');
  sweep_cmd->add_option("--b-min", sweep_b_min);
  sweep_cmd->add_option("--b-max", sweep_b_max);
  sweep_cmd->add_option("--n", sweep_n);
  sweep_flags.attach(sweep_cmd);

  double ep_a = 1.0;
  double ep_lo = 0.0;
  double ep_hi = 2.0;
  double ep_tol = 1e-10;
  auto* locate_cmd = app.add_subcommand("locate-ep", "bisect for the exceptional point");
  locate_cmd->add_option("--a", ep_a);
  locate_cmd->add_option("--b-lo", ep_lo);
  locate_cmd->add_option("--b-hi", ep_hi);
  locate_cmd->add_option("--tol", ep_tol);

  double disp_k_min = 0.0;
  double disp_k_max = 3.0;
  std::size_t disp_n = 4;
  auto* disp_cmd = app.add_subcommand("fv-dispersion", "Feshbach-Villars dispersion table");
  disp_cmd->add_option("--k-min", disp_k_min);
  disp_cmd->add_option("--k-max", disp_k_max);
  disp_cmd->add_option("--n", disp_n);

  FvEvolveFlags fflags;
  auto* fv_cmd = app.add_subcommand("fv-evolve", "Feshbach-Villars evolution with charge log");
  fv_cmd->add_option("--k-min", fflags.k_min, "default: -k-max");
  fv_cmd->add_option("--k-max", fflags.k_max);
  fv_cmd->add_option("--n", fflags.n, "grid points");
  fv_cmd->add_option("--t-final", fflags.t_final);
  fv_cmd->add_option("--steps", fflags.steps);
  fv_cmd->add_option("--init", fflags.init)->check(CLI::IsMember({"gaussian", "random"}));
  fv_cmd->add_option("--k0", fflags.k0, "gaussian centre");
  fv_cmd->add_option("--width", fflags.width, "gaussian width");
  fv_cmd->add_option("--state-out", fflags.state_out, "final FvState snapshot file");
  fv_cmd->add_option("--position-out", fflags.position_out, "position-space field CSV");
  fv_cmd->add_option("--x-max", fflags.x_max);
  fv_cmd->add_option("--x-points", fflags.x_points);

  std::vector<double> kg_psi0{1.0, 0.0};
  std::vector<double> kg_psi_dot0{0.0, 0.0};
  double kg_k = 0.0;
  double kg_t = 20.0;
  std::size_t kg_steps = 2000;
  auto* kg_cmd = app.add_subcommand("kg-check", "compare FV evolution with the analytic KG solution");
  kg_cmd->add_option("--psi0", kg_psi0, "re[,im]")->delimiter(',');
  kg_cmd->add_option("--psi-dot0", kg_psi_dot0, "re[,im]")->delimiter(',');
  kg_cmd->add_option("--k", kg_k);
  kg_cmd->add_option("--t-final", kg_t);
  kg_cmd->add_option("--steps", kg_steps);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? kExitOk : kExitValidation;
  }
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    CommandOutput result;
    const std::string& c = cfg.command;
    if (c == "classify") {
      result = run_classify(src, cflags);
    } else if (c == "spectrum") {
      result = run_spectrum(spec_src);
    } else if (c == "metric") {
      result = run_metric(metric_src, signs);
    } else if (c == "metric-profile") {
      result = run_metric_profile(
          profile_a, grid_from(profile_b, profile_b_min, profile_b_max, profile_n, "metric-profile"));
    } else if (c == "evolve") {
      result = run_evolve(evolve_src, eflags, cfg.seed);
    } else if (c == "sweep") {
      result = run_sweep(sweep_a, grid_from(sweep_grid, sweep_b_min, sweep_b_max, sweep_n, "sweep"),
                         sweep_flags);
    } else if (c == "locate-ep") {
      result = run_locate(ep_a, ep_lo, ep_hi, ep_tol);
    } else if (c == "fv-dispersion") {
      result = run_fv_dispersion(disp_k_min, disp_k_max, disp_n);
    } else if (c == "fv-evolve") {
      result = run_fv_evolve(fflags, cfg);
    } else if (c == "kg-check") {
      result = run_kg_check(parse_complex(kg_psi0, "--psi0"), parse_complex(kg_psi_dot0, "--psi-dot0"),
                            kg_k, kg_t, kg_steps);
    }

    const std::string payload = cfg.format == Format::Json ? result.data.dump(2) + "\n" : result.csv;
    if (cfg.output_path.empty()) {
      out << payload;
      err << result.summary << "\n";
    } else {
      write_file(cfg.output_path, payload);
      out << result.summary << "\n";
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: ValidationError: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: InternalError: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace pseudoherm::cli
