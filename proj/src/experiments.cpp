#include "bo2d/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bo2d/diagnostics.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/evolution.hpp"
#include "bo2d/fft.hpp"
#include "bo2d/inequality.hpp"
#include "bo2d/io.hpp"
#include "bo2d/propagator.hpp"
#include "bo2d/scattering.hpp"

namespace bo2d {

namespace {

namespace fs = std::filesystem;

// Collects the files an experiment writes for the manifest.
class Outputs {
 public:
  explicit Outputs(const RunConfig& config) : config_(config), dir_(config.out) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + config.out + "': " + ec.message());
  }

  std::string path(const std::string& name) {
    files_.push_back(name);
    return (dir_ / name).string();
  }

  std::ofstream open(const std::string& name) {
    std::ofstream f(path(name), std::ios::binary);
    if (!f) throw IoError("cannot open '" + (dir_ / name).string() + "' for writing");
    return f;
  }

  void snapshot(const std::string& name, const SpectralField& u) { write_snapshot(path(name), u, config_.params.s); }

  void finish() {
    write_text_file((dir_ / "config.txt").string(), serialize(config_));
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config_)));
    std::ostringstream m;
    m << "program = bo2d_lab\n"
      << "version = 1.0.0\n"
      << "experiment = " << to_string(config_.experiment) << "\n"
      << "config_hash = fnv1a64:" << hash << "\n"
      << "fft_backend = " << fft::backend_version() << "\n"
      << "compiler = " << __VERSION__ << "\n"
      << "snapshot_format = BO2D v" << kSnapshotVersion << "\n"
      << "config = config.txt\n";
    for (const auto& f : files_) m << "artifact = " << f << "\n";
    write_text_file((dir_ / "manifest.txt").string(), m.str());
  }

 private:
  const RunConfig& config_;
  fs::path dir_;
  std::vector<std::string> files_;
};

void check_stream(std::ofstream& f, const std::string& name) {
  f.flush();
  if (!f) throw IoError("failed writing '" + name + "'");
}

std::string snapshot_name(std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%05zu.bo2d", j);
  return buf;
}

void write_diagnostics(Outputs& outputs, const Trajectory& traj, const RunConfig& config) {
  auto f = outputs.open("diagnostics.csv");
  CsvWriter csv(f, {"t", "l2", "hs", "xs", "linf", "w1inf", "weighted", "gronwall_integrand"});
  for (const auto& u : traj.snapshots) {
    const auto r = norms(u, config.params, {{}, config.theta, false});
    csv.cell(r.time).cell(r.l2).cell(r.hs).cell(r.xs ? csv_number(*r.xs) : std::string("nan"));
    csv.cell(r.linf).cell(r.w1inf).cell(r.weighted).cell(r.gronwall_integrand);
    csv.end_row();
  }
  check_stream(f, "diagnostics.csv");
}

Trajectory solve(const RunConfig& config, const SpectralField& phi, std::ostream& out) {
  const double dt = resolve_dt(config, linf_norm(phi));
  out << "dt = " << csv_number(dt) << (config.dt ? "" : " (auto)") << "\n";
  return evolve(phi, config.params, make_schedule(config, dt));
}

int report_blow_up(const Trajectory& traj, std::ostream& err) {
  err << "error: " << traj.blow_up_message << "\n";
  return kExitBlowUp;
}

int run_evolve(const RunConfig& config, Outputs& outputs, std::ostream& out, std::ostream& err) {
  const auto traj = solve(config, make_initial_data(config), out);
  for (std::size_t j = 0; j < traj.snapshots.size(); ++j) outputs.snapshot(snapshot_name(j), traj.snapshots[j]);
  write_diagnostics(outputs, traj, config);
  out << "evolve: " << traj.snapshots.size() << " snapshots up to t = " << csv_number(traj.snapshots.back().time)
      << "\n";
  return traj.blew_up ? report_blow_up(traj, err) : kExitOk;
}

int run_kernel_check(const RunConfig& config, Outputs& outputs, std::ostream& out) {
  const auto phi = make_initial_data(config);
  const double t = config.kernel_t;
  const auto a = propagate_via_kernel(phi, t, config.params);
  const auto b = propagate(phi, t, config.params);
  const double d = relative_l2_distance(a, b);
  auto f = outputs.open("kernel_check.csv");
  CsvWriter csv(f, {"t", "relative_l2_discrepancy", "outside_half_domain", "kernel_at_origin"});
  csv.cell(t).cell(d).cell(outside_half_domain_fraction(phi)).cell(kernel_I(t, 0.0, 0.0).real());
  csv.end_row();
  check_stream(f, "kernel_check.csv");
  out << "kernel-check: t = " << csv_number(t) << ", relative L2 discrepancy = " << csv_number(d) << "\n";
  return kExitOk;
}

int run_decay(const RunConfig& config, Outputs& outputs, std::ostream& out) {
  const auto phi = make_initial_data(config);
  const double theta = config.decay_theta;
  const double q = theta >= 1.0 ? HUGE_VAL : 2.0 / (1.0 - theta);
  std::vector<std::pair<double, double>> series;
  double window_end = config.decay_t_min;
  bool clean = true;
  auto f = outputs.open("decay.csv");
  CsvWriter csv(f, {"t", "lq_norm", "boundary_strip"});
  const int n = config.decay_samples;
  for (int j = 0; j < n; ++j) {
    const double t = config.decay_t_min * std::pow(config.decay_t_max / config.decay_t_min, double(j) / (n - 1));
    const auto u = propagate(phi, t, config.params);
    const double v = lp_norm(u, q), strip = boundary_strip_fraction(u);
    csv.cell(t).cell(v).cell(strip);
    csv.end_row();
    series.emplace_back(t, v);
    clean = clean && strip < 1e-4;
    if (clean) window_end = t;
  }
  check_stream(f, "decay.csv");
  const auto fit = fit_decay(series, {config.decay_t_min, window_end});
  auto g = outputs.open("decay_fit.csv");
  CsvWriter fcsv(g, {"theta", "q", "t_min", "t_max", "exponent", "amplitude", "r_squared", "samples"});
  fcsv.cell(theta).cell(q).cell(fit.window.first).cell(fit.window.second).cell(fit.exponent);
  fcsv.cell(fit.amplitude).cell(fit.r_squared).cell(double(fit.samples));
  fcsv.end_row();
  check_stream(g, "decay_fit.csv");
  out << "decay: theta = " << csv_number(theta) << ", fitted exponent = " << csv_number(fit.exponent)
      << " over [" << csv_number(fit.window.first) << ", " << csv_number(fit.window.second) << "]\n";
  return kExitOk;
}

int run_commutators(const RunConfig& config, Outputs& outputs, std::ostream& out) {
  RatioStudy st;
  st.kind = config.kind;
  st.s = config.params.s;
  std::vector<std::uint64_t> seeds;
  for (int j = 0; j < config.seeds; ++j) seeds.push_back(std::uint64_t(j));
  const auto rep = run_ratio_study(st, seeds);
  auto f = outputs.open("commutators.csv");
  CsvWriter csv(f, {"kind", "s", "s_tilde", "t_tilde", "p", "s0", "n", "seed", "lhs", "rhs", "ratio"});
  auto row = [&](std::size_t n, const std::string& seed, double lhs, double rhs, double ratio) {
    csv.cell(to_string(st.kind)).cell(st.s).cell(st.s_tilde).cell(st.t_tilde).cell(st.p).cell(st.s0);
    csv.cell(std::to_string(n)).cell(seed).cell(lhs).cell(rhs).cell(ratio);
    csv.end_row();
  };
  const std::size_t n = rep.study.n;
  for (const auto& s : rep.samples) row(n, std::to_string(s.seed), s.lhs, s.rhs, s.ratio);
  for (const auto& s : rep.refined) row(2 * n, std::to_string(s.seed), s.lhs, s.rhs, s.ratio);
  // summary: lhs and rhs columns carry the two maxima, ratio their quotient
  row(n, "max", rep.max_ratio, rep.refined_max_ratio, rep.refinement_ratio);
  check_stream(f, "commutators.csv");
  out << "commutators: " << to_string(st.kind) << ", max ratio " << csv_number(rep.max_ratio)
      << ", refinement ratio " << csv_number(rep.refinement_ratio) << "\n";
  return kExitOk;
}

int run_jbound(const RunConfig& config, Outputs& outputs, std::ostream& out) {
  std::vector<double> times{0.0};
  for (double t = 1.0; t < config.t_max; t *= 10.0) times.push_back(t);
  times.push_back(config.t_max);
  auto f = outputs.open("jbound.csv");
  CsvWriter csv(f, {"t", "J"});
  out << "jbound: p = " << config.jbound_p << "\n";
  for (double t : times) {
    const double j = j_integral(t, config.jbound_p);
    csv.cell(t).cell(j);
    csv.end_row();
    out << "  " << csv_number(t) << "  " << csv_number(j) << "\n";
  }
  check_stream(f, "jbound.csv");
  return kExitOk;
}

int run_scatter(const RunConfig& config, Outputs& outputs, std::ostream& out, std::ostream& err) {
  const auto traj = solve(config, make_initial_data(config), out);
  write_diagnostics(outputs, traj, config);
  if (traj.blew_up) return report_blow_up(traj, err);
  const double window = valid_window_end(traj.snapshots);
  const auto res = scattering_state(traj, config.params, config.r, window);
  auto f = outputs.open("scatter.csv");
  CsvWriter csv(f, {"t", "cauchy_increment", "distance_to_free"});
  const auto& rec = res.record;
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    csv.cell(rec.times[k]).cell(k == 0 ? std::string("nan") : csv_number(rec.cauchy_increments[k - 1]));
    csv.cell(rec.distance_to_free[k]);
    csv.end_row();
  }
  check_stream(f, "scatter.csv");
  outputs.snapshot("phi_plus.bo2d", res.phi_plus);
  out << "scatter: window ends at t = " << csv_number(window) << ", last increment "
      << csv_number(rec.cauchy_increments.back()) << " (r = " << csv_number(rec.r) << ")\n";
  return kExitOk;
}

}  // namespace

SpectralField make_initial_data(const RunConfig& config) {
  const auto g = make_grid(config.grid);
  const auto& in = config.init;
  const double a = in.amplitude, w = in.width;
  switch (in.kind) {
    case InitKind::gaussian:
      return transform(g, sample(g, [a, w](double x, double y) { return a * std::exp(-(x * x + y * y) / (2 * w * w)); }));
    case InitKind::dx_gaussian:
      return transform(g, sample(g, [a, w](double x, double y) {
                         return -a * x / (w * w) * std::exp(-(x * x + y * y) / (2 * w * w));
                       }));
    case InitKind::random_smooth:
      return a * random_smooth_field(in.seed, g, in.decay_rate);
    case InitKind::file: {
      auto snap = read_snapshot(in.path);
      if (!(snap.field.grid == g))
        throw ConfigError("init_file '" + in.path + "' holds a field on a different grid than nx, ny, lx, ly");
      snap.field.time = 0.0;
      return snap.field;
    }
  }
  throw ConfigError("unknown init kind");
}

int run_experiment(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  Outputs outputs(config);
  int code = kExitOk;
  switch (config.experiment) {
    case Experiment::evolve: code = run_evolve(config, outputs, out, err); break;
    case Experiment::kernel_check: code = run_kernel_check(config, outputs, out); break;
    case Experiment::decay: code = run_decay(config, outputs, out); break;
    case Experiment::commutators: code = run_commutators(config, outputs, out); break;
    case Experiment::jbound: code = run_jbound(config, outputs, out); break;
    case Experiment::scatter: code = run_scatter(config, outputs, out, err); break;
  }
  outputs.finish();
  return code;
}

}  // namespace bo2d
