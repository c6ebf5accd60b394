#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bo2d/config.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/experiments.hpp"
#include "bo2d/io.hpp"
#include "bo2d/log.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bo2d;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("bo2d_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "bo2d_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("config defaults and values") {
  const auto c = parse_config_text("# minimal\nexperiment = evolve\n");
  CHECK(c == RunConfig{});
  CHECK_FALSE(c.dt.has_value());
  CHECK(c.grid.nx == 256);
  CHECK(c.params.s == 3.0);

  const auto d = parse_config_text(R"(
nx = 64   # trailing comment
ny = 32
lx = 20pi
ly = 2 * pi
p = 3
alpha = 0.5
dt = 0.01
init = dx_gaussian
amplitude = 0.1
kind = leibniz
r = 2.5
)");
  CHECK(d.grid.nx == 64);
  CHECK(d.grid.lx == doctest::Approx(20 * std::numbers::pi));
  CHECK(d.grid.ly == doctest::Approx(2 * std::numbers::pi));
  CHECK(d.dt == 0.01);
  CHECK(d.init.kind == InitKind::dx_gaussian);
  CHECK(d.kind == InequalityKind::leibniz);
  CHECK(d.r == 2.5);
}

TEST_CASE("config errors are collected") {
  const auto e = config_error("nx = 7\n");
  CHECK(e.find("nx must be even (got 7)") != std::string::npos);

  const auto many = config_error("nx = 7\nny = 4\nbogus = 1\np = two\ns = 2\nnx = 8\ncfl_guard = 2\ninit = file\n");
  CHECK(many.find("nx must be even (got 7)") != std::string::npos);
  CHECK(many.find("nx: duplicate key (line 6)") != std::string::npos);
  CHECK(many.find("ny must be at least 8 (got 4)") != std::string::npos);
  CHECK(many.find("unknown key 'bogus' (line 3)") != std::string::npos);
  CHECK(many.find("p: expected an integer (got 'two')") != std::string::npos);
  CHECK(many.find("s must exceed 2") != std::string::npos);
  CHECK(many.find("cfl_guard must lie in (0, 1]") != std::string::npos);
  CHECK(many.find("init_file: missing required key") != std::string::npos);

  CHECK(config_error("dt = -1\n").find("dt must be positive") != std::string::npos);
  CHECK(config_error("nx 64\n").find("expected 'key = value'") != std::string::npos);
  CHECK(config_error("experiment = kernel_check\nalpha = 2\n").find("alpha must be 1") != std::string::npos);
  CHECK(config_error("r = 1\n").find("r must lie in [s - 1, s)") != std::string::npos);
  CHECK_THROWS_AS(parse_config("/nonexistent/config.txt"), IoError);
}

TEST_CASE("nx error from the parser sits before the later evenness check") {
  // the first assignment of a key is kept and validated
  CHECK(config_error("nx = 7\nnx = 8\n").find("nx must be even (got 7)") != std::string::npos);
}

TEST_CASE("gamma with non-zero mean data warns") {
  std::vector<std::string> warnings;
  auto prev = set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
  (void)parse_config_text("gamma = 0.5\n");
  (void)parse_config_text("gamma = 0.5\ninit = dx_gaussian\n");
  set_warning_sink(prev);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("projected onto zero x-mean") != std::string::npos);
}

TEST_CASE("config round trip and hash") {
  RunConfig c;
  c.grid = {64, 128, 3.3, 0.1 + 0.2};
  c.params = {3, 0.7, -0.25, 3.5};
  c.dt = 1.0 / 3.0;
  c.t_end = 2.5;
  c.snapshot_stride = 4;
  c.cfl_guard = 0.9;
  c.init = {InitKind::random_smooth, 0.2, 1.5, 77, 5.5, ""};
  c.out = "results dir";
  c.experiment = Experiment::scatter;
  c.theta = 0.75;
  c.kind = InequalityKind::product_dx;
  c.r = 2.75;
  const auto text = serialize(c);
  CHECK(parse_config_text(text) == c);
  CHECK(serialize(parse_config_text(text)) == text);
  CHECK(config_hash(c) == config_hash(parse_config_text(text)));
  auto d = c;
  d.t_end = 2.5000000000000004;
  CHECK(config_hash(d) != config_hash(c));
  CHECK(parse_config_text(serialize(RunConfig{})) == RunConfig{});

  RunConfig f;
  f.init.kind = InitKind::file;
  f.init.path = "/data/phi.bo2d";
  CHECK(parse_config_text(serialize(f)) == f);
}

TEST_CASE("snapshot format") {
  const auto g = make_grid(16, 8, 2.0, 3.0);
  auto u = testing::random_field(g, 4, 3);
  u.time = 1.25;
  const auto bytes = encode_snapshot(u, 3.5);
  REQUIRE(bytes.size() == 48 + 16 * 16 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "BO2D");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 1);  // real flag
  CHECK(bytes[8] == 16);
  CHECK(bytes[12] == 8);

  const auto back = decode_snapshot(bytes);
  CHECK(back.s == 3.5);
  CHECK(back.field.time == 1.25);
  CHECK(back.field.real);
  CHECK(back.field.grid == g);
  CHECK(back.field.coeffs == u.coeffs);
  CHECK(encode_snapshot(back.field, back.s) == bytes);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  CHECK_THROWS_WITH_AS(decode_snapshot(truncated), doctest::Contains("truncated snapshot"), IoError);
  truncated.resize(20);
  CHECK_THROWS_WITH_AS(decode_snapshot(truncated), doctest::Contains("truncated snapshot"), IoError);
  auto versioned = bytes;
  versioned[4] = 2;
  CHECK_THROWS_WITH_AS(decode_snapshot(versioned), doctest::Contains("unsupported version"), IoError);
  auto magic = bytes;
  magic[0] = 'X';
  CHECK_THROWS_WITH_AS(decode_snapshot(magic), doctest::Contains("bad magic"), IoError);

  const auto dir = scratch_dir("snap");
  const auto path = (dir / "u.bo2d").string();
  write_snapshot(path, u, 3.5);
  CHECK(read_snapshot(path).field.coeffs == u.coeffs);
  CHECK_THROWS_AS(read_snapshot((dir / "missing.bo2d").string()), IoError);
  CHECK_THROWS_AS(write_snapshot((dir / "no" / "such" / "dir.bo2d").string(), u, 3.5), IoError);

  auto c = u;
  c.real = false;
  CHECK_FALSE(decode_snapshot(encode_snapshot(c, 3.0)).field.real);
}

TEST_CASE("csv numbers") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(2.0) == "2");
  CHECK(csv_number(std::nan("")) == "nan");
  CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("evolve on zero data") {
  const auto dir = scratch_dir("zero");
  std::ofstream(dir / "zero.cfg") << "nx = 16\nny = 16\nlx = pi\nly = pi\ninit = gaussian\namplitude = 0\nt_end = 0.5\n";
  const int code = cli({"evolve", "--config", (dir / "zero.cfg").string(), "--out", (dir / "out").string()});
  CHECK(code == kExitOk);
  std::istringstream csv(slurp(dir / "out" / "diagnostics.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,l2,hs,xs,linf,w1inf,weighted,gronwall_integrand");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0,0,0,0,0,0");
  }
  CHECK(rows == 11);
  CHECK(fs::exists(dir / "out" / "snapshot_00010.bo2d"));
  const auto manifest = slurp(dir / "out" / "manifest.txt");
  CHECK(manifest.find("config_hash = fnv1a64:") != std::string::npos);
  CHECK(manifest.find("artifact = diagnostics.csv") != std::string::npos);
}

TEST_CASE("jbound table") {
  const auto dir = scratch_dir("jbound");
  std::string out;
  CHECK(cli({"jbound", "--p", "2", "--tmax", "10", "--out", dir.string()}, &out) == kExitOk);
  const auto csv = slurp(dir / "jbound.csv");
  const auto row = csv.substr(csv.rfind("10,"));
  CHECK(std::stod(row.substr(3)) == doctest::Approx(4.3962).epsilon(1e-4));
}

TEST_CASE("reruns are byte-identical") {
  const auto dir = scratch_dir("rerun");
  std::ofstream(dir / "run.cfg") << "nx = 32\nny = 32\nlx = 4pi\nly = 4pi\np = 2\ninit = dx_gaussian\n"
                                    "amplitude = 0.5\nt_end = 0.4\ndt = 0.02\nsnapshot_stride = 5\n";
  for (const char* sub : {"a", "b"})
    REQUIRE(cli({"evolve", "--config", (dir / "run.cfg").string(), "--out", (dir / sub).string()}) == kExitOk);
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    CAPTURE(entry.path().filename().string());
    // config and manifest carry the output path
    if (entry.path().extension() == ".txt") continue;
    CHECK(slurp(entry.path()) == slurp(dir / "b" / entry.path().filename()));
  }
  // the evolved state can seed a new run
  std::ofstream(dir / "again.cfg") << "nx = 32\nny = 32\nlx = 4pi\nly = 4pi\ninit = file\ninit_file = "
                                   << (dir / "a" / "snapshot_00004.bo2d").string() << "\nt_end = 0.1\n";
  CHECK(cli({"evolve", "--config", (dir / "again.cfg").string(), "--out", (dir / "c").string()}) == kExitOk);
  std::ofstream(dir / "wrong.cfg") << "nx = 16\nny = 32\nlx = 4pi\nly = 4pi\ninit = file\ninit_file = "
                                   << (dir / "a" / "snapshot_00004.bo2d").string() << "\n";
  CHECK(cli({"evolve", "--config", (dir / "wrong.cfg").string(), "--out", (dir / "d").string()}) == kExitConfig);
}

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("codes");
  std::string err;
  std::ofstream(dir / "bad.cfg") << "nx = 7\n";
  CHECK(cli({"evolve", "--config", (dir / "bad.cfg").string()}, nullptr, &err) == kExitConfig);
  CHECK(err.find("nx must be even") != std::string::npos);
  CHECK(cli({"nonsense"}) == kExitConfig);
  CHECK(cli({"commutators", "--kind", "nope"}) == kExitConfig);
  CHECK(cli({"evolve", "--config", (dir / "missing.cfg").string()}) == kExitIo);

  std::ofstream(dir / "file_in_the_way") << "x";
  CHECK(cli({"jbound", "--out", (dir / "file_in_the_way" / "sub").string()}) == kExitIo);

  std::ofstream(dir / "huge.cfg") << "nx = 16\nny = 16\nlx = pi\nly = pi\namplitude = 1e7\ndt = 1e-12\nt_end = 1e-11\n";
  CHECK(cli({"evolve", "--config", (dir / "huge.cfg").string(), "--out", (dir / "huge").string()}, nullptr, &err) ==
        kExitBlowUp);
  CHECK(err.find("blow-up detected") != std::string::npos);
  CHECK(fs::exists(dir / "huge" / "snapshot_00000.bo2d"));

  std::string out;
  CHECK(cli({"--help"}, &out) == kExitOk);
  CHECK(out.find("kernel-check") != std::string::npos);
}

TEST_CASE("other experiments write their tables") {
  const auto dir = scratch_dir("others");
  std::ofstream(dir / "k.cfg") << "nx = 64\nny = 64\nlx = 8pi\nly = 8pi\ninit = dx_gaussian\nkernel_t = 0.1\n";
  std::string out;
  CHECK(cli({"kernel-check", "--config", (dir / "k.cfg").string(), "--out", (dir / "k").string()}, &out) == kExitOk);
  CHECK(out.find("relative L2 discrepancy") != std::string::npos);
  CHECK(fs::exists(dir / "k" / "kernel_check.csv"));

  std::ofstream(dir / "d.cfg") << "nx = 128\nny = 128\nlx = 32pi\nly = 32pi\ninit = dx_gaussian\n"
                                  "decay_t_min = 2\ndecay_t_max = 20\ndecay_samples = 12\n";
  CHECK(cli({"decay", "--theta", "1", "--config", (dir / "d.cfg").string(), "--out", (dir / "d").string()}) ==
        kExitOk);
  CHECK(slurp(dir / "d" / "decay_fit.csv").find("theta,q,t_min,t_max,exponent") == 0);

  CHECK(cli({"commutators", "--kind", "calderon", "--seeds", "3", "--out", (dir / "c").string()}) == kExitOk);
  const auto comm = slurp(dir / "c" / "commutators.csv");
  CHECK(comm.find("calderon") != std::string::npos);
  CHECK(comm.find(",max,") != std::string::npos);

  std::ofstream(dir / "s.cfg") << "nx = 64\nny = 64\nlx = 8pi\nly = 8pi\np = 3\ninit = dx_gaussian\n"
                                  "amplitude = 0.3\nt_end = 1\ndt = 0.05\nsnapshot_stride = 2\n";
  CHECK(cli({"scatter", "--config", (dir / "s.cfg").string(), "--out", (dir / "s").string()}, &out) == kExitOk);
  CHECK(fs::exists(dir / "s" / "phi_plus.bo2d"));
  CHECK(fs::exists(dir / "s" / "scatter.csv"));
}
