// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bo2d/config.hpp"
#include "bo2d/diagnostics.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/evolution.hpp"
#include "bo2d/experiments.hpp"
#include "bo2d/inequality.hpp"
#include "bo2d/io.hpp"
#include "bo2d/propagator.hpp"
#include "bo2d/scattering.hpp"
#include "oscillatory_oracle.hpp"
#include "support.hpp"

using namespace bo2d;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [miss]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SpectralField gaussian(const Grid2D& g, double amp) {
  return transform(g, sample(g, [amp](double x, double y) { return amp * std::exp(-(x * x + y * y) / 2); }));
}

SpectralField dx_gaussian(const Grid2D& g, double amp) {
  return transform(g, sample(g, [amp](double x, double y) { return -amp * x * std::exp(-(x * x + y * y) / 2); }));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// p = 3 small-data run shared by criteria 6 and 8
const Trajectory& small_data_run() {
  static const Trajectory traj = [] {
    const auto g = make_grid(512, 512, 32 * pi, 32 * pi);
    return evolve(dx_gaussian(g, 0.1), EquationParams{3, 1.0, 0.0, 3.0}, SolveSchedule{0.25, 16.0, 2, 0.5});
  }();
  return traj;
}

void linear_group(Outcome& o) {
  const auto g = make_grid(128, 128, 2 * pi, 2 * pi);
  for (const EquationParams params : {EquationParams{1, 1.0, 0.0, 3.0}, EquationParams{1, 0.6, 0.8, 3.0}}) {
    const auto phi = project_zero_x_mean(random_smooth_field(11, g, 5.0));
    double norm_err = 0.0, group_err = 0.0;
    for (double t : {0.1, 1.0, 7.3}) {
      const auto back = propagate(phi, -t, params);
      norm_err = std::max(norm_err, std::abs(hs_norm(back, params.s) / hs_norm(phi, params.s) - 1.0));
      group_err = std::max(group_err, relative_l2_distance(propagate(back, t, params), phi));
      group_err = std::max(group_err, relative_l2_distance(propagate(propagate(phi, t, params), 0.37, params),
                                                           propagate(phi, t + 0.37, params)));
    }
    const std::string tag = params.gamma == 0.0 ? "gamma=0" : "gamma=0.8";
    o.require(norm_err <= 1e-12, tag + " H^s drift " + num(norm_err));
    o.require(group_err <= 1e-12, tag + " group law " + num(group_err));
  }
}

void kernel_cross_check(Outcome& o) {
  const EquationParams params{1, 1.0, 0.0, 3.0};
  const auto g1 = make_grid(256, 256, 20 * pi, 20 * pi), g2 = make_grid(512, 512, 40 * pi, 40 * pi);
  const double d1 = relative_l2_distance(propagate_via_kernel(gaussian(g1, 1.0), 1.0, params),
                                         propagate(gaussian(g1, 1.0), 1.0, params));
  const double d2 = relative_l2_distance(propagate_via_kernel(gaussian(g2, 1.0), 1.0, params),
                                         propagate(gaussian(g2, 1.0), 1.0, params));
  o.require(d1 <= 1e-3, "discrepancy at 20pi " + num(d1) + " (<= 1e-3)");
  o.require(d2 < d1, "at 40pi " + num(d2));
  const double k = std::abs(kernel_I(1.0, 0.0, 0.0) - oracle::kernel(1.0, 0.0, 0.0));
  o.require(k <= 1e-6, "I(1)(0,0) vs quadrature " + num(k));
}

void conservation(Outcome& o) {
  const auto g = make_grid(64, 64, 4 * pi, 4 * pi);
  for (int p : {1, 3}) {
    const auto phi = dx_gaussian(g, 0.5);
    const auto traj = evolve(phi, EquationParams{p, 1.0, 0.0, 3.0}, SolveSchedule{0.01, 1.0, 10, 0.5});
    double drift = 0.0, mean_drift = 0.0;
    const double l0 = traj.diagnostics.front().l2;
    for (const auto& s : traj.snapshots) {
      drift = std::max(drift, std::abs(l2_norm(s) - l0) / l0);
      for (std::size_t iy = 0; iy < g.ny(); ++iy) mean_drift = std::max(mean_drift, std::abs(s(0, iy) - phi(0, iy)));
    }
    o.require(drift <= 1e-8 && !traj.blew_up, "p=" + std::to_string(p) + " L2 drift " + num(drift));
    o.require(mean_drift == 0.0, "x-mean drift " + num(mean_drift));
  }
}

void integrator_order(Outcome& o) {
  const auto g = make_grid(32, 32, pi, pi);
  const EquationParams params{2, 0.7, 0.0, 3.0};
  auto phi = testing::random_field(g, 21, 6);
  phi = (0.8 / testing::max_abs(inverse_transform(phi))) * phi;
  auto run = [&](int n) {
    SpectralField u = phi;
    for (int k = 0; k < n; ++k) u = step(u, 0.4 / n, params);
    return u;
  };
  const auto u1 = run(32), u2 = run(64), u3 = run(128);
  const double slope = std::log2(l2_norm(u1 - u2) / l2_norm(u2 - u3));
  o.require(std::abs(slope - 4.0) <= 0.3, "self-convergence slope " + num(slope));

  const auto h = make_grid(32, 32, 2 * pi, 2 * pi);
  auto psi = testing::random_field(h, 31, 4);
  psi = (0.8 / testing::max_abs(inverse_transform(psi))) * psi;
  const double r1 = duhamel_residual(evolve(psi, params, SolveSchedule{0.00125, 1.0, 16, 0.5}), params);
  const double r2 = duhamel_residual(evolve(psi, params, SolveSchedule{0.00125, 1.0, 8, 0.5}), params);
  o.require(std::abs(r1 / r2 / 16.0 - 1.0) <= 0.3, "Duhamel residual ratio " + num(r1 / r2));
}

void linear_decay(Outcome& o) {
  const auto g = make_grid(2048, 2048, 128 * pi, 128 * pi);
  const EquationParams params{1, 1.0, 0.0, 3.0};
  const auto f = dx_gaussian(g, 1.0);
  std::vector<std::pair<double, double>> sup, l4;
  double window_end = 5.0;
  bool clean = true;
  for (int j = 0; j < 36; ++j) {
    const double t = 5.0 * std::pow(8.0, j / 35.0);
    const auto u = propagate(f, t, params);
    clean = clean && boundary_strip_fraction(u) < 1e-4;
    if (clean) window_end = t;
    sup.emplace_back(t, linf_norm(u));
    l4.emplace_back(t, lp_norm(u, 4.0));
  }
  const auto a = fit_decay(sup, {5.0, window_end}), b = fit_decay(l4, {5.0, window_end});
  o.require(window_end > 20.0, "window [5, " + num(window_end) + "]");
  o.require(std::abs(a.exponent + 1.0) <= 0.2, "theta=1 exponent " + num(a.exponent));
  o.require(std::abs(b.exponent + 0.5) <= 0.15, "theta=1/2 exponent " + num(b.exponent));
}

void small_data_decay(Outcome& o) {
  const auto& traj = small_data_run();
  // |phi|_{1,1} + ||phi||_s against the amplitude-1 reference
  const auto g = traj.snapshots.front().grid;
  const auto ref = dx_gaussian(g, 1.0), phi = traj.snapshots.front();
  const double size = (l1_sobolev(phi) + hs_norm(phi, 3.0)) / (l1_sobolev(ref) + hs_norm(ref, 3.0));
  o.require(size <= 0.1 + 1e-12, "data size " + num(size) + " of reference");
  o.require(!traj.blew_up, "no blow-up");
  const double end = valid_window_end(traj.snapshots);
  std::vector<std::pair<double, double>> series;
  double worst = 0.0;
  const double w0 = traj.diagnostics.front().w1inf;
  for (const auto& d : traj.diagnostics) {
    if (d.time > end) break;
    series.emplace_back(d.time, d.w1inf);
    worst = std::max(worst, (1.0 + d.time) * d.w1inf / w0);
  }
  const auto fit = fit_decay(series, {5.0, end});
  o.require(std::abs(fit.exponent + 1.0) <= 0.25, "exponent " + num(fit.exponent) + " over [5, " + num(end) + "]");
  o.require(worst < 3.0, "max (1+t)|u|_{1,inf} / initial " + num(worst));
}

void j_dichotomy(Outcome& o) {
  double err = 0.0;
  for (double t : {1.0, 10.0, 100.0})
    err = std::max(err, std::abs(j_integral(t, 2) - 2 * (1 + t) * std::log1p(t) / (2 + t)));
  o.require(err <= 1e-9, "p=2 closed form " + num(err));
  const double r3 = j_integral(1e4, 3) / j_integral(1e3, 3), r2 = j_integral(1e4, 2) / j_integral(1e3, 2);
  o.require(r3 <= 1.05, "p=3 ratio " + num(r3));
  o.require(r2 >= 1.2, "p=2 ratio " + num(r2));
}

void scattering(Outcome& o) {
  const auto g = make_grid(64, 64, 4 * pi, 4 * pi);
  const EquationParams params{3, 1.0, 0.0, 3.0};
  const auto phi = dx_gaussian(g, 0.5);
  const auto lin = evolve(phi, params, SolveSchedule{0.1, 2.0, 2, 0.5}, Nonlinearity::none);
  const double d = relative_l2_distance(scattering_state(lin, params).phi_plus, phi);
  o.require(d <= 1e-13, "linear phi_plus error " + num(d));

  const auto& traj = small_data_run();
  const double end = valid_window_end(traj.snapshots);
  const auto rec = scattering_state(traj, params, std::nullopt, end).record;
  const auto& inc = rec.cauchy_increments;
  bool mono = inc.size() >= 4;
  for (std::size_t j = inc.size() >= 4 ? inc.size() - 3 : 1; j < inc.size(); ++j) mono = mono && inc[j] < inc[j - 1];
  o.require(mono, "last increments " + (inc.size() >= 2 ? num(inc[inc.size() - 2]) + " > " + num(inc.back()) : ""));
  const auto& dist = rec.distance_to_free;
  bool dec = dist.size() >= 4;
  for (std::size_t j = dist.size() >= 4 ? dist.size() - 3 : 1; j < dist.size(); ++j) dec = dec && dist[j] < dist[j - 1];
  o.require(dec, "distance to free over tail " + (dist.size() >= 2 ? num(dist.back()) : ""));
}

void inequality_harness(Outcome& o) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 50; ++s) seeds.push_back(s);
  for (auto kind : {InequalityKind::kato, InequalityKind::kato_ponce, InequalityKind::leibniz, InequalityKind::calderon,
                    InequalityKind::product_A, InequalityKind::product_dx}) {
    RatioStudy st;
    st.kind = kind;
    const auto rep = run_ratio_study(st, seeds);
    o.require(std::isfinite(rep.max_ratio) && rep.refinement_ratio <= 2.0,
              to_string(kind) + " max " + num(rep.max_ratio) + " refinement " + num(rep.refinement_ratio));
  }
  const auto g = make_grid(128, 128, pi, pi);
  const auto f = random_smooth_field(1, g, 5.0), h = random_smooth_field(2, g, 5.0), z = SpectralField(g);
  auto c = z;
  c(0, 0) = 2.5 * std::sqrt(double(g.size()));
  const std::vector<double> flat(4096, 1.3), zero(4096, 0.0), line = random_smooth_line(4, 4096, pi, 4.0);
  const bool zeros = kato_commutator_ratio(c, h, 0, 0, 3).ratio == 0.0 &&
                     kato_commutator_ratio(f, z, 0, 0, 3).ratio == 0.0 && kato_ponce_ratio(c, h, 2.0).ratio == 0.0 &&
                     kato_ponce_ratio(f, z, 2.0).ratio == 0.0 && leibniz_ratio(f, z, 2.0).ratio == 0.0 &&
                     leibniz_ratio(z, h, 2.0).ratio == 0.0 && product_ratio(f, z, 2.0).ratio == 0.0 &&
                     product_dx_ratio(f, z, 2.0, 1.5).ratio == 0.0 && calderon_ratio(flat, line, pi).ratio == 0.0 &&
                     calderon_ratio(zero, line, pi).ratio == 0.0;
  o.require(zeros, "trivial inputs give 0");
}

void weighted_norm(Outcome& o) {
  const auto g = make_grid(256, 256, 16 * pi, 16 * pi);
  const EquationParams params{3, 1.0, 0.0, 3.0};
  const auto traj = evolve(dx_gaussian(g, 0.1), params, SolveSchedule{0.0125, 1.0, 1, 0.5});
  std::vector<double> times, weighted, xs_max;
  double m = 0.0;
  for (const auto& u : traj.snapshots) {
    m = std::max(m, xs_norm(u, params.s).value_or(hs_norm(u, params.s)));
    times.push_back(u.time);
    weighted.push_back(weighted_l2(u, 1.0));
    xs_max.push_back(m);
  }
  const auto [b_only, a_only] = calibrate_weighted_bound(times, weighted, xs_max, 0.25);
  auto holds = [&](const WeightedBound& wb) {
    double worst = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j)
      worst = std::max(worst, weighted[j] / wb.evaluate(times[j], weighted[0], xs_max[j]));
    return worst;
  };
  const double wb = holds(b_only), wa = holds(a_only);
  o.require(wb <= 1.0 + 1e-12 || wa <= 1.0 + 1e-12, "worst ratio to bound through t=1: B-only (B=" + num(b_only.b) +
                                                        ") " + num(wb) + ", A-only (A=" + num(a_only.a) + ") " + num(wa));
}

void serialization(Outcome& o) {
  const auto dir = fs::temp_directory_path() / "bo2d_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto u = random_smooth_field(3, make_grid(64, 32, pi, 2 * pi), 4.0);
  write_snapshot((dir / "u.bo2d").string(), u, 3.0);
  const auto back = read_snapshot((dir / "u.bo2d").string());
  write_snapshot((dir / "v.bo2d").string(), back.field, back.s);
  o.require(back.field.coeffs == u.coeffs && slurp(dir / "u.bo2d") == slurp(dir / "v.bo2d"), "snapshot byte identity");

  RunConfig c;
  c.grid = {64, 64, 4 * pi, 4 * pi};
  c.params.p = 2;
  c.init.kind = InitKind::dx_gaussian;
  c.init.amplitude = 0.5;
  c.t_end = 0.5;
  c.dt = 0.05;
  c.snapshot_stride = 2;
  o.require(parse_config_text(serialize(c)) == c, "config round trip");

  std::ostringstream sink;
  bool same = true;
  for (const char* sub : {"a", "b"}) {
    c.out = (dir / sub).string();
    same = same && run_experiment(c, sink, sink) == kExitOk;
  }
  for (const auto& e : fs::directory_iterator(dir / "a"))
    if (e.path().extension() != ".txt") same = same && slurp(e.path()) == slurp(dir / "b" / e.path().filename());
  o.require(same, "deterministic rerun");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"linear group exactness", linear_group},
      {"kernel cross-check", kernel_cross_check},
      {"conservation", conservation},
      {"integrator order", integrator_order},
      {"linear Lp-Lq decay", linear_decay},
      {"small-data decay", small_data_decay},
      {"J dichotomy", j_dichotomy},
      {"scattering", scattering},
      {"inequality harness", inequality_harness},
      {"weighted-norm boundedness", weighted_norm},
      {"serialization", serialization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %-26s %s  (%s; %.1fs)\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
