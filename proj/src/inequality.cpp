#include "bo2d/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "bo2d/dealias.hpp"
#include "bo2d/diagnostics.hpp"
#include "bo2d/errors.hpp"
#include "bo2d/fft.hpp"
#include "bo2d/multiplier.hpp"

namespace bo2d {

namespace {

using std::numbers::pi;


std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on [0, 1) from (seed, kx, ky).
double hashed_uniform(std::uint64_t seed, long kx, long ky) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(kx));
  h = splitmix(h ^ (static_cast<std::uint64_t>(ky) * 0x632be59bd9b4e019ULL));
  return double(h >> 11) * 0x1.0p-53;
}

// Coefficient of a Hermitian random spectrum at (kx, ky).
cplx hashed_mode(std::uint64_t seed, long kx, long ky, double amplitude) {
  if (kx == 0 && ky == 0) return amplitude * (hashed_uniform(seed, 0, 0) < 0.5 ? -1.0 : 1.0);
  const bool canonical = kx > 0 || (kx == 0 && ky > 0);
  const double theta = 2.0 * pi * (canonical ? hashed_uniform(seed, kx, ky) : hashed_uniform(seed, -kx, -ky));
  return std::polar(amplitude, canonical ? theta : -theta);
}

void require_decay(double r) {
  if (!(r > 1.0)) {
    std::ostringstream os;
    os << "decay_rate must exceed 1 (got " << r << ")";
    throw InvalidArgument(os.str());
  }
}

// Minimal spectral toolkit on a periodic line; coefficients are physical
// Fourier amplitudes in FFT slot order.
class Line {
 public:
  Line(std::size_t n, double half_length) : n_(n), l_(half_length) {
    if (n < 8 || n % 2 != 0) throw InvalidArgument("line samples must be even and at least 8");
  }

  long k(std::size_t j) const { return j < n_ / 2 ? long(j) : long(j) - long(n_); }
  double xi(std::size_t j) const { return pi * double(k(j)) / l_; }
  double x(std::size_t j) const { return -l_ + 2.0 * l_ * double(j) / double(n_); }

  std::vector<cplx> coeffs(std::span<const double> samples) const {
    if (samples.size() != n_) throw GridMismatch("line sample count does not match");
    std::vector<cplx> c(samples.begin(), samples.end());
    fft::dft1(c, fft::Direction::forward);
    for (auto& v : c) v /= double(n_);
    return c;
  }

  std::vector<double> samples(std::vector<cplx> c) const {
    fft::dft1(c, fft::Direction::backward);
    std::vector<double> out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = c[j].real();
    return out;
  }

  template <class Symbol>
  std::vector<cplx> apply(std::vector<cplx> c, Symbol&& m) const {
    for (std::size_t j = 0; j < n_; ++j) c[j] = j == n_ / 2 ? cplx{} : c[j] * m(xi(j));
    return c;
  }

  std::vector<cplx> deriv(std::vector<cplx> c) const {
    return apply(std::move(c), [](double x) { return cplx{0.0, x}; });
  }
  std::vector<cplx> hilbert(std::vector<cplx> c) const {
    return apply(std::move(c), [](double x) { return cplx{0.0, x > 0 ? -1.0 : (x < 0 ? 1.0 : 0.0)}; });
  }

  // Alias-free product on a grid padded past 3n/2.
  std::vector<cplx> product(const std::vector<cplx>& a, const std::vector<cplx>& b) const {
    const std::size_t m = fft::good_size(3 * n_ / 2 + 1);
    auto up = [&](const std::vector<cplx>& c) {
      std::vector<cplx> p(m);
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == n_ / 2) {
          p[n_ / 2] += 0.5 * c[j];
          p[m - n_ / 2] += 0.5 * c[j];
        } else {
          p[j < n_ / 2 ? j : m - (n_ - j)] += c[j];
        }
      }
      fft::dft1(p, fft::Direction::backward);
      return p;
    };
    auto pa = up(a);
    const auto pb = up(b);
    for (std::size_t j = 0; j < m; ++j) pa[j] = cplx{pa[j].real() * pb[j].real(), 0.0};
    fft::dft1(pa, fft::Direction::forward);
    std::vector<cplx> out(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == n_ / 2)
        out[j] = (pa[n_ / 2] + pa[m - n_ / 2]) / double(m);
      else
        out[j] = pa[j < n_ / 2 ? j : m - (n_ - j)] / double(m);
    }
    return out;
  }

  double l2(const std::vector<cplx>& c) const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return std::sqrt(2.0 * l_ * s);
  }

 private:
  std::size_t n_;
  double l_;
};

double grad_sup(const SpectralField& f) {
  const auto fx = inverse_transform(deriv_x(f));
  const auto fy = inverse_transform(deriv_y(f));
  double m = 0.0;
  for (std::size_t k = 0; k < fx.size(); ++k) m = std::max(m, std::hypot(fx[k], fy[k]));
  return m;
}

SpectralField product(const SpectralField& a, const SpectralField& b) { return dealias_product({a, b}, 2); }

// [Lambda^a, M_f] h
SpectralField commutator(const SpectralField& f, const SpectralField& h, double a) {
  return lambda_s(product(f, h), a) - product(f, lambda_s(h, a));
}

double bracket_norm(const SpectralField& u, double s, bool homogeneous) {
  return homogeneous ? l2_norm(apply_multiplier(u, symbols::HomogeneousS{s})) : hs_norm(u, s);
}

// Left sides that vanish analytically (constant f, say) come out at
// round-off level; below this floor they count as exact zeros.
double roundoff_floor(const SpectralField& f, const SpectralField& g, double order) {
  return 1e-12 * wiener_norm(f) * hs_norm(g, std::max(order, 0.0));
}

RatioSample snapped(double lhs, double rhs, double floor) { return make_sample(lhs <= floor ? 0.0 : lhs, rhs); }

void require_positive_s(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "s must be positive (got " << s << ")";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

SpectralField random_smooth_field(std::uint64_t seed, const Grid2D& g, double decay_rate) {
  require_decay(decay_rate);
  SpectralField u(g);
  const double scale = std::sqrt(double(g.size()));
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    if (g.is_nyquist_x(ix)) continue;
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      if (g.is_nyquist_y(iy)) continue;
      const double xi = g.xi(ix), eta = g.eta(iy);
      const double amp = std::pow(1.0 + xi * xi + eta * eta, -0.5 * decay_rate);
      u(ix, iy) = scale * hashed_mode(seed, g.kx(ix), g.ky(iy), amp);
    }
  }
  return u;
}

std::vector<double> random_smooth_line(std::uint64_t seed, std::size_t n, double half_length, double decay_rate) {
  require_decay(decay_rate);
  const Line line(n, half_length);
  std::vector<cplx> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == n / 2) continue;
    const double xi = line.xi(j);
    c[j] = hashed_mode(seed, line.k(j), 0, std::pow(1.0 + xi * xi, -0.5 * decay_rate));
  }
  return line.samples(std::move(c));
}

RatioSample make_sample(double lhs, double rhs, std::uint64_t seed) {
  RatioSample s;
  s.seed = seed;
  s.lhs = lhs;
  s.rhs = rhs;
  s.ratio = lhs == 0.0 && rhs == 0.0 ? 0.0 : lhs / rhs;
  return s;
}

RatioSample kato_commutator_ratio(const SpectralField& f, const SpectralField& g, double s_tilde, double t_tilde,
                                  double s) {
  if (!(std::abs(s_tilde) <= s - 1.0) || !(std::abs(t_tilde) <= s - 1.0)) {
    std::ostringstream os;
    os << "Kato commutator needs |s~|, |t~| <= s - 1 (got s~ = " << s_tilde << ", t~ = " << t_tilde
       << ", s = " << s << ")";
    throw InvalidArgument(os.str());
  }
  const auto h = lambda_s(g, -t_tilde);
  const double lhs = l2_norm(lambda_s(commutator(f, h, s_tilde + t_tilde + 1.0), -s_tilde));
  const double fx = hs_norm(deriv_x(f), s - 1.0), fy = hs_norm(deriv_y(f), s - 1.0);
  return snapped(lhs, std::hypot(fx, fy) * l2_norm(g), roundoff_floor(f, g, s + 1.0));
}

RatioSample kato_ponce_ratio(const SpectralField& f, const SpectralField& g, double s, double p) {
  require_positive_s(s);
  const double lhs = lp_norm(commutator(f, g, s), p);
  const double rhs = grad_sup(f) * lp_norm(lambda_s(g, s - 1.0), p) + lp_norm(lambda_s(f, s), p) * linf_norm(g);
  return snapped(lhs, rhs, roundoff_floor(f, g, s + 1.0));
}

RatioSample leibniz_ratio(const SpectralField& f, const SpectralField& g, double s, double p) {
  require_positive_s(s);
  const double lhs = lp_norm(lambda_s(product(f, g), s), p);
  const double rhs = linf_norm(f) * lp_norm(lambda_s(g, s), p) + lp_norm(lambda_s(f, s), p) * linf_norm(g);
  return make_sample(lhs, rhs);
}

RatioSample calderon_ratio(std::span<const double> a, std::span<const double> f, double half_length) {
  if (a.size() != f.size()) throw GridMismatch("Calderon inputs differ in length");
  const Line line(a.size(), half_length);
  const auto ac = line.coeffs(a);
  const auto fp = line.deriv(line.coeffs(f));
  const auto left = line.hilbert(line.product(ac, fp));
  const auto right = line.product(ac, line.hilbert(fp));
  std::vector<cplx> diff(left.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = left[j] - right[j];
  double a_lip = 0.0, a_wiener = 0.0;
  for (double v : line.samples(line.deriv(ac))) a_lip = std::max(a_lip, std::abs(v));
  for (const auto& c : ac) a_wiener += std::abs(c);
  return snapped(line.l2(diff), a_lip * line.l2(line.coeffs(f)), 1e-12 * a_wiener * line.l2(fp));
}

double wiener_norm(const SpectralField& u) {
  double s = 0.0;
  for (const auto& c : u.coeffs) s += std::abs(c);
  return s / std::sqrt(double(u.grid.size()));
}

RatioSample product_ratio(const SpectralField& g, const SpectralField& h, double s, ProductVariant variant) {
  if (!(s >= 0.0)) throw InvalidArgument("product estimate needs s >= 0");
  const double lhs = bracket_norm(product(g, h), s, variant.homogeneous);
  const double tail = variant.literal ? wiener_norm(g) : wiener_norm(h);
  const double rhs = wiener_norm(g) * bracket_norm(h, s, variant.homogeneous) +
                     bracket_norm(g, s, variant.homogeneous) * tail;
  return make_sample(lhs, rhs);
}

RatioSample product_dx_ratio(const SpectralField& g, const SpectralField& h, double s, double s0) {
  if (!(s >= 0.0)) throw InvalidArgument("product estimate needs s >= 0");
  if (!(s0 > 1.0)) throw InvalidArgument("product estimate needs s0 > 1");
  const double lhs = hs_norm(product(g, deriv_x(h)), s);
  const double rhs = hs_norm(g, s) * hs_norm(h, s) + hs_norm(g, s0) * hs_norm(h, s + 1.0);
  return make_sample(lhs, rhs);
}

std::string to_string(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::kato: return "kato";
    case InequalityKind::kato_ponce: return "kato_ponce";
    case InequalityKind::leibniz: return "leibniz";
    case InequalityKind::calderon: return "calderon";
    case InequalityKind::product_A: return "product_A";
    case InequalityKind::product_dx: return "product_dx";
  }
  return "unknown";
}

InequalityKind inequality_kind_from_string(const std::string& name) {
  for (auto k : {InequalityKind::kato, InequalityKind::kato_ponce, InequalityKind::leibniz, InequalityKind::calderon,
                 InequalityKind::product_A, InequalityKind::product_dx})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown inequality kind '" + name +
                        "' (expected kato, kato_ponce, leibniz, calderon, product_A or product_dx)");
}

namespace {

RatioSample one_sample(const RatioStudy& st, std::uint64_t seed, std::size_t n) {
  const double r = st.decay_rate > 0.0 ? st.decay_rate : st.s + 3.0;
  RatioSample out;
  if (st.kind == InequalityKind::calderon) {
    const auto a = random_smooth_line(2 * seed, n, st.half_length, r);
    const auto f = random_smooth_line(2 * seed + 1, n, st.half_length, r);
    out = calderon_ratio(a, f, st.half_length);
  } else {
    const auto g = make_grid(n, n, st.half_length, st.half_length);
    const auto u = random_smooth_field(2 * seed, g, r);
    const auto v = random_smooth_field(2 * seed + 1, g, r);
    switch (st.kind) {
      case InequalityKind::kato: out = kato_commutator_ratio(u, v, st.s_tilde, st.t_tilde, st.s); break;
      case InequalityKind::kato_ponce: out = kato_ponce_ratio(u, v, st.s, st.p); break;
      case InequalityKind::leibniz: out = leibniz_ratio(u, v, st.s, st.p); break;
      case InequalityKind::product_A: out = product_ratio(u, v, st.s, st.variant); break;
      case InequalityKind::product_dx: out = product_dx_ratio(u, v, st.s, st.s0); break;
      case InequalityKind::calderon: break;
    }
  }
  out.seed = seed;
  return out;
}

}  // namespace

RatioReport run_ratio_study(const RatioStudy& study, const std::vector<std::uint64_t>& seeds) {
  RatioReport rep;
  rep.study = study;
  const std::size_t n = study.n > 0 ? study.n : (study.kind == InequalityKind::calderon ? 4096 : 128);
  rep.study.n = n;
  rep.samples.resize(seeds.size());
  rep.refined.resize(seeds.size());

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t first = 0; first < seeds.size(); first += workers) {
    std::vector<std::future<void>> jobs;
    for (std::size_t j = first; j < std::min(seeds.size(), first + workers); ++j)
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, j] {
        rep.samples[j] = one_sample(rep.study, seeds[j], n);
        rep.refined[j] = one_sample(rep.study, seeds[j], 2 * n);
      }));
    for (auto& job : jobs) job.get();
  }
  for (const auto& s : rep.samples) rep.max_ratio = std::max(rep.max_ratio, s.ratio);
  for (const auto& s : rep.refined) rep.refined_max_ratio = std::max(rep.refined_max_ratio, s.ratio);
  rep.refinement_ratio = rep.max_ratio > 0.0 ? rep.refined_max_ratio / rep.max_ratio
                                             : (rep.refined_max_ratio > 0.0 ? HUGE_VAL : 1.0);
  return rep;
}

}  // namespace bo2d
