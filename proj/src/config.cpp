#include "bo2d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "bo2d/errors.hpp"
#include "bo2d/log.hpp"

namespace bo2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct BadValue {
  std::string what;
};

double parse_real(const std::string& v) {
  // plain numbers, optionally multiplied by pi: "2.5", "20pi", "20*pi", "pi"
  std::string body = v;
  double factor = 1.0;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    factor = 3.141592653589793;
    body = trim(body.substr(0, body.size() - 2));
    if (!body.empty() && body.back() == '*') body = trim(body.substr(0, body.size() - 1));
    if (body.empty()) return factor;
  }
  double x = 0.0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw BadValue{"expected a real number (got '" + v + "')"};
  return x * factor;
}

long long parse_int(const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw BadValue{"expected an integer (got '" + v + "')"};
  return x;
}

std::uint64_t parse_unsigned(const std::string& v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw BadValue{"expected a non-negative integer (got '" + v + "')"};
  return x;
}

template <class E>
E parse_enum(const std::string& v, std::initializer_list<E> options) {
  std::string names;
  for (E e : options) {
    if (to_string(e) == v) return e;
    names += (names.empty() ? "" : ", ") + to_string(e);
  }
  throw BadValue{"expected one of " + names + " (got '" + v + "')"};
}

InequalityKind parse_kind(const std::string& v) {
  try {
    return inequality_kind_from_string(v);
  } catch (const InvalidArgument& e) {
    throw BadValue{e.what()};
  }
}

std::optional<double> parse_auto(const std::string& v) {
  if (v == "auto") return std::nullopt;
  return parse_real(v);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Key {
  const char* name;
  Setter set;
  Getter get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"experiment", [](RunConfig& c, const std::string& v) {
         c.experiment = parse_enum(v, {Experiment::evolve, Experiment::kernel_check, Experiment::decay,
                                       Experiment::commutators, Experiment::jbound, Experiment::scatter});
       }, [](const RunConfig& c) { return to_string(c.experiment); }},
      {"nx", [](RunConfig& c, const std::string& v) { c.grid.nx = parse_unsigned(v); },
       [](const RunConfig& c) { return std::to_string(c.grid.nx); }},
      {"ny", [](RunConfig& c, const std::string& v) { c.grid.ny = parse_unsigned(v); },
       [](const RunConfig& c) { return std::to_string(c.grid.ny); }},
      {"lx", [](RunConfig& c, const std::string& v) { c.grid.lx = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.grid.lx); }},
      {"ly", [](RunConfig& c, const std::string& v) { c.grid.ly = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.grid.ly); }},
      {"p", [](RunConfig& c, const std::string& v) { c.params.p = int(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.params.p); }},
      {"alpha", [](RunConfig& c, const std::string& v) { c.params.alpha = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.params.alpha); }},
      {"gamma", [](RunConfig& c, const std::string& v) { c.params.gamma = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.params.gamma); }},
      {"s", [](RunConfig& c, const std::string& v) { c.params.s = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.params.s); }},
      {"dt", [](RunConfig& c, const std::string& v) { c.dt = parse_auto(v); },
       [](const RunConfig& c) { return c.dt ? format_real(*c.dt) : std::string("auto"); }},
      {"t_end", [](RunConfig& c, const std::string& v) { c.t_end = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.t_end); }},
      {"snapshot_stride", [](RunConfig& c, const std::string& v) { c.snapshot_stride = int(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.snapshot_stride); }},
      {"cfl_guard", [](RunConfig& c, const std::string& v) { c.cfl_guard = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.cfl_guard); }},
      {"init", [](RunConfig& c, const std::string& v) {
         c.init.kind = parse_enum(v, {InitKind::gaussian, InitKind::dx_gaussian, InitKind::random_smooth, InitKind::file});
       }, [](const RunConfig& c) { return to_string(c.init.kind); }},
      {"amplitude", [](RunConfig& c, const std::string& v) { c.init.amplitude = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.init.amplitude); }},
      {"width", [](RunConfig& c, const std::string& v) { c.init.width = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.init.width); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.init.seed = parse_unsigned(v); },
       [](const RunConfig& c) { return std::to_string(c.init.seed); }},
      {"decay_rate", [](RunConfig& c, const std::string& v) { c.init.decay_rate = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.init.decay_rate); }},
      {"init_file", [](RunConfig& c, const std::string& v) { c.init.path = v; },
       [](const RunConfig& c) { return c.init.path; }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; }, [](const RunConfig& c) { return c.out; }},
      {"theta", [](RunConfig& c, const std::string& v) { c.theta = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.theta); }},
      {"kernel_t", [](RunConfig& c, const std::string& v) { c.kernel_t = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.kernel_t); }},
      {"decay_theta", [](RunConfig& c, const std::string& v) { c.decay_theta = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.decay_theta); }},
      {"decay_t_min", [](RunConfig& c, const std::string& v) { c.decay_t_min = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.decay_t_min); }},
      {"decay_t_max", [](RunConfig& c, const std::string& v) { c.decay_t_max = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.decay_t_max); }},
      {"decay_samples", [](RunConfig& c, const std::string& v) { c.decay_samples = int(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.decay_samples); }},
      {"kind", [](RunConfig& c, const std::string& v) { c.kind = parse_kind(v); },
       [](const RunConfig& c) { return to_string(c.kind); }},
      {"seeds", [](RunConfig& c, const std::string& v) { c.seeds = int(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.seeds); }},
      {"jbound_p", [](RunConfig& c, const std::string& v) { c.jbound_p = int(parse_int(v)); },
       [](const RunConfig& c) { return std::to_string(c.jbound_p); }},
      {"t_max", [](RunConfig& c, const std::string& v) { c.t_max = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.t_max); }},
      {"r", [](RunConfig& c, const std::string& v) { c.r = parse_auto(v); },
       [](const RunConfig& c) { return c.r ? format_real(*c.r) : std::string("auto"); }},
  };
  return table;
}

std::vector<std::string> problems(const RunConfig& c) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
  };
  auto num = [](double x) { return format_real(x); };
  for (auto [name, n] : {std::pair{"nx", c.grid.nx}, std::pair{"ny", c.grid.ny}}) {
    if (n % 2 != 0)
      out.push_back(std::string(name) + " must be even (got " + std::to_string(n) + ")");
    else if (n < 8)
      out.push_back(std::string(name) + " must be at least 8 (got " + std::to_string(n) + ")");
  }
  need(c.grid.lx > 0 && std::isfinite(c.grid.lx), "lx must be positive (got " + num(c.grid.lx) + ")");
  need(c.grid.ly > 0 && std::isfinite(c.grid.ly), "ly must be positive (got " + num(c.grid.ly) + ")");
  need(c.params.p >= 1, "p must be at least 1 (got " + std::to_string(c.params.p) + ")");
  need(c.params.s > 2, "s must exceed 2 (got " + num(c.params.s) + ")");
  need(std::isfinite(c.params.alpha), "alpha must be finite");
  need(std::isfinite(c.params.gamma), "gamma must be finite");
  if (c.dt) need(*c.dt > 0 && std::isfinite(*c.dt), "dt must be positive or auto (got " + num(*c.dt) + ")");
  need(c.t_end > 0 && std::isfinite(c.t_end), "t_end must be positive (got " + num(c.t_end) + ")");
  need(c.snapshot_stride >= 1, "snapshot_stride must be at least 1 (got " + std::to_string(c.snapshot_stride) + ")");
  need(c.cfl_guard > 0 && c.cfl_guard <= 1, "cfl_guard must lie in (0, 1] (got " + num(c.cfl_guard) + ")");
  need(std::isfinite(c.init.amplitude), "amplitude must be finite");
  need(c.init.width > 0 && std::isfinite(c.init.width), "width must be positive (got " + num(c.init.width) + ")");
  need(c.init.decay_rate > 1, "decay_rate must exceed 1 (got " + num(c.init.decay_rate) + ")");
  if (c.init.kind == InitKind::file) need(!c.init.path.empty(), "init_file: missing required key for init = file");
  need(!c.out.empty(), "out must name a directory");
  need(c.theta >= 0 && std::isfinite(c.theta), "theta must be non-negative (got " + num(c.theta) + ")");
  need(c.kernel_t != 0 && std::isfinite(c.kernel_t), "kernel_t must be non-zero (got " + num(c.kernel_t) + ")");
  need(c.decay_theta > 0 && c.decay_theta <= 1, "decay_theta must lie in (0, 1] (got " + num(c.decay_theta) + ")");
  need(c.decay_t_min > 0 && c.decay_t_min < c.decay_t_max,
       "decay_t_min must be positive and below decay_t_max (got " + num(c.decay_t_min) + ")");
  need(c.decay_samples >= 8, "decay_samples must be at least 8 (got " + std::to_string(c.decay_samples) + ")");
  need(c.seeds >= 1, "seeds must be at least 1 (got " + std::to_string(c.seeds) + ")");
  need(c.jbound_p >= 1, "jbound_p must be at least 1 (got " + std::to_string(c.jbound_p) + ")");
  need(c.t_max > 0 && std::isfinite(c.t_max), "t_max must be positive (got " + num(c.t_max) + ")");
  if (c.r)
    need(*c.r >= c.params.s - 1 && *c.r < c.params.s,
         "r must lie in [s - 1, s) (got " + num(*c.r) + " with s = " + num(c.params.s) + ")");
  if (c.experiment == Experiment::kernel_check) {
    need(c.params.alpha == 1.0, "alpha must be 1 for kernel_check (the kernel is only available there)");
    need(c.params.gamma == 0.0, "gamma must be 0 for kernel_check (the kernel is only available there)");
  }
  return out;
}

[[noreturn]] void fail(const std::vector<std::string>& errors) {
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ConfigError(msg);
}

}  // namespace

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::gaussian: return "gaussian";
    case InitKind::dx_gaussian: return "dx_gaussian";
    case InitKind::random_smooth: return "random_smooth";
    case InitKind::file: return "file";
  }
  return "unknown";
}

std::string to_string(Experiment kind) {
  switch (kind) {
    case Experiment::evolve: return "evolve";
    case Experiment::kernel_check: return "kernel_check";
    case Experiment::decay: return "decay";
    case Experiment::commutators: return "commutators";
    case Experiment::jbound: return "jbound";
    case Experiment::scatter: return "scatter";
  }
  return "unknown";
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::vector<std::string> errors;
  std::set<std::string> seen;
  std::map<std::string, const Key*> lookup;
  for (const auto& k : keys()) lookup[k.name] = &k;

  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = " (line " + std::to_string(number) + ")";
    if (eq == std::string::npos) {
      errors.push_back("expected 'key = value', got '" + line + "'" + where);
      continue;
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const auto it = lookup.find(key);
    if (it == lookup.end()) {
      errors.push_back("unknown key '" + key + "'" + where);
      continue;
    }
    if (!seen.insert(key).second) {
      errors.push_back(key + ": duplicate key" + where);
      continue;
    }
    if (value.empty() && key != "init_file") {
      errors.push_back(key + ": missing value" + where);
      continue;
    }
    try {
      it->second->set(c, value);
    } catch (const BadValue& e) {
      errors.push_back(key + ": " + e.what + where);
    }
  }
  for (auto& p : problems(c)) errors.push_back(std::move(p));
  if (!errors.empty()) fail(errors);

  if (c.params.gamma != 0.0 && (c.init.kind == InitKind::gaussian || c.init.kind == InitKind::random_smooth))
    warn("gamma = " + format_real(c.params.gamma) + " but init = " + to_string(c.init.kind) +
         " has a non-zero x-mean; the data will be projected onto zero x-mean");
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate(const RunConfig& config) {
  const auto errors = problems(config);
  if (!errors.empty()) fail(errors);
}

std::string serialize(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) {
    const std::string v = k.get(config);
    if (v.empty()) continue;
    out += std::string(k.name) + " = " + v + "\n";
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double resolve_dt(const RunConfig& config, double sup_norm) {
  if (config.dt) return *config.dt;
  const double bound = config.cfl_guard * stability_bound(make_grid(config.grid), config.params.p, sup_norm);
  return std::min(bound, config.t_end / 10.0);
}

Grid2D make_grid(const GridSpec& spec) { return Grid2D(spec.nx, spec.ny, spec.lx, spec.ly); }

SolveSchedule make_schedule(const RunConfig& config, double dt) {
  return SolveSchedule{dt, config.t_end, config.snapshot_stride, config.cfl_guard};
}

}  // namespace bo2d
