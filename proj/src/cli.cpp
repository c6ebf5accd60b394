#include <CLI11.hpp>

#include <optional>

#include "bo2d/errors.hpp"
#include "bo2d/experiments.hpp"

namespace bo2d {

namespace {

struct CliOptions {
  std::string config;
  std::string out;
  std::optional<double> theta;
  std::optional<std::string> kind;
  std::optional<int> seeds;
  std::optional<int> p;
  std::optional<double> tmax;
  std::optional<double> r;
};

RunConfig resolve(const CliOptions& o, Experiment experiment) {
  RunConfig c = o.config.empty() ? RunConfig{} : parse_config(o.config);
  c.experiment = experiment;
  if (!o.out.empty()) c.out = o.out;
  if (o.theta) c.decay_theta = *o.theta;
  if (o.kind) {
    try {
      c.kind = inequality_kind_from_string(*o.kind);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--kind: ") + e.what());
    }
  }
  if (o.seeds) c.seeds = *o.seeds;
  if (o.p) c.jbound_p = *o.p;
  if (o.tmax) c.t_max = *o.tmax;
  if (o.r) c.r = *o.r;
  validate(c);
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudospectral lab for the 2D generalized Benjamin-Ono equation", "bo2d_lab"};
  app.require_subcommand(1);
  CliOptions o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "key = value configuration file");
    sub->add_option("--out", o.out, "output directory (overrides the config's out)");
    return sub;
  };
  auto* evolve_cmd = common(app.add_subcommand("evolve", "nonlinear evolution with snapshots and diagnostics"));
  auto* kernel_cmd = common(app.add_subcommand("kernel-check", "explicit kernel against the Fourier multiplier"));
  auto* decay_cmd = common(app.add_subcommand("decay", "L^p-L^q decay of the linear group"));
  decay_cmd->add_option("--theta", o.theta, "decay exponent theta in (0, 1]");
  auto* comm_cmd = common(app.add_subcommand("commutators", "commutator and product inequality ratios"));
  comm_cmd->add_option("--kind", o.kind, "kato, kato_ponce, leibniz, calderon, product_A or product_dx");
  comm_cmd->add_option("--seeds", o.seeds, "number of seeded samples");
  auto* j_cmd = common(app.add_subcommand("jbound", "table of J(t)"));
  j_cmd->add_option("--p", o.p, "nonlinearity power");
  j_cmd->add_option("--tmax", o.tmax, "largest t");
  auto* scatter_cmd = common(app.add_subcommand("scatter", "scattering state of a small-data run"));
  scatter_cmd->add_option("--r", o.r, "norm index in [s - 1, s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Experiment experiment = Experiment::evolve;
  if (kernel_cmd->parsed()) experiment = Experiment::kernel_check;
  else if (decay_cmd->parsed()) experiment = Experiment::decay;
  else if (comm_cmd->parsed()) experiment = Experiment::commutators;
  else if (j_cmd->parsed()) experiment = Experiment::jbound;
  else if (scatter_cmd->parsed()) experiment = Experiment::scatter;
  (void)evolve_cmd;

  try {
    return run_experiment(resolve(o, experiment), out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BlowUp& e) {
    err << "error: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace bo2d
