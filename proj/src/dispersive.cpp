#include "htype/dispersive.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "htype/errors.hpp"
#include "htype/laguerre.hpp"
#include "htype/parallel.hpp"
#include "htype/transform.hpp"

namespace htype {

std::vector<double> log_spaced(double a, double b, int n) {
  if (!(a > 0) || !(b > a) || n < 2) fail(Errc::OutOfRange, "log_spaced needs 0 < a < b and n >= 2");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = a * std::pow(b / a, (double)k / (n - 1));
  t.back() = b;
  return t;
}

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& sups, double t_min, double t_max) {
  DecayFit fit;
  fit.times = times;
  fit.sup_norms = sups;
  fit.t_min = t_min;
  fit.t_max = t_max;
  std::vector<double> X, Y;
  for (size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) fail(Errc::OutOfRange, "times must be strictly increasing");
    if (times[i] >= t_min && times[i] <= t_max) {
      if (!(sups[i] > 0)) fail(Errc::OutOfRange, "sup norms in the fit window must be positive");
      X.push_back(std::log(times[i]));
      Y.push_back(std::log(sups[i]));
    }
  }
  if (X.size() < 2) fail(Errc::OutOfRange, "fit window holds fewer than two samples");
  double n = X.size(), mx = 0, my = 0;
  for (size_t i = 0; i < X.size(); ++i) {
    mx += X[i] / n;
    my += Y[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  double slope = sxy / sxx;
  fit.fitted_exponent = -slope;
  fit.r_squared = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

double aliasing_window(const SphericalSpectrum& S, double r0) {
  double mx = 0;
  for (auto v : S.c) mx = std::max(mx, std::abs(v));
  int top = -1;
  for (int m = 0; m <= S.M; ++m)
    for (long b = 0; b < S.n_bins(); ++b)
      if (std::abs(S.at(m, b)) > 1e-14 * mx) top = m;
  if (top < 0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, (S.grid.L / 4.0 - r0) / (2.0 * top + S.G.d));
}

DecayFit kernel_decay(const HTypeGroup& G, const LPProfile& profile, const std::vector<double>& t_grid,
                      const DecaySampling& sampling) {
  if (G.p < 2) fail(Errc::OutOfRange, "kernel decay needs p >= 2");
  std::vector<double> sups(t_grid.size());
  if (sampling.backend == DecayBackend::Continuum) {
    MultiplierKernel K = MultiplierKernel::lp(G.d, G.p, sampling.M, profile, 0);
    parallel_for((int)t_grid.size(), sampling.jobs,
                 [&](int i) { sups[i] = K.propagated(t_grid[i]).sup(sampling.sup).value; });
  } else {
    SphericalSpectrum S = lp_kernel(G, 0, profile, sampling.M, sampling.grid);
    double window = aliasing_window(S);
    for (double t : t_grid)
      if (std::abs(t) > window)
        fail(Errc::AliasingWindowExceeded,
             "t = " + std::to_string(t) + " exceeds the aliasing-safe window " + std::to_string(window));
    parallel_for((int)t_grid.size(), sampling.jobs,
                 [&](int i) { sups[i] = lattice_sup(propagator(S, t_grid[i]), sampling.sup).value; });
  }
  return fit_decay(t_grid, sups, sampling.t_min, sampling.t_max);
}

ScalingResidual kernel_scaling_check(const HTypeGroup& G, int j, double t, int M, const LatticeGrid& grid,
                                     const LPProfile& profile, int n_points) {
  LatticeGrid big = make_lattice(grid.p, std::ldexp(grid.L, 2 * j), grid.n_s);
  SphericalSpectrum lhs = propagator(lp_kernel_tilde(G, j, profile, M, grid), t);
  SphericalSpectrum rhs0 = propagator(lp_kernel_tilde(G, 0, profile, M, big), std::ldexp(t, 2 * j));
  double amp = std::ldexp(1.0, G.N() * j);
  SphericalSpectrum rhs = cplx(amp) * rescale_dyadic(rhs0, j, grid);

  RadialField fl = inverse_transform(lhs);
  RadialField fr = inverse_transform(rhs);
  ScalingResidual res;
  for (size_t i = 0; i < fl.v.size(); ++i) {
    res.relabel = std::max(res.relabel, std::abs(fl.v[i] - fr.v[i]));
    res.scale = std::max(res.scale, std::abs(fl.v[i]));
  }

  long nb = grid.n_bins();
  long total = (long)fl.rho.size() * nb;
  long stride = std::max(1L, total / std::max(1, n_points));
  std::vector<PhysPoint> pts;
  std::vector<cplx> ref;
  for (long q = 0; q < total && (int)pts.size() < n_points; q += stride) {
    int i = (int)(q / nb);
    long k = q % nb;
    auto s = lattice_point(grid, k);
    for (double& x : s) x = std::ldexp(x, 2 * j);
    pts.push_back(PhysPoint{std::ldexp(fl.rho.rho[i], j), s});
    ref.push_back(fl.at(i, k));
  }
  auto vals = evaluate_at(rhs0, pts);
  for (size_t q = 0; q < pts.size(); ++q) res.pointwise = std::max(res.pointwise, std::abs(amp * vals[q] - ref[q]));
  return res;
}

int split_threshold(double t) {
  if (t == 0.0) fail(Errc::ZeroTime, "frequency split needs t != 0");
  return (int)std::ceil(-0.5 * std::log2(std::abs(t)));
}

std::pair<SphericalSpectrum, SphericalSpectrum> freq_split(const SphericalSpectrum& S, double t,
                                                           const LPProfile& profile) {
  int J = split_threshold(t);
  SphericalSpectrum low = apply_multiplier(S, [&](double x) { return cplx(profile.phi_below(J, x)); });
  SphericalSpectrum high = apply_multiplier(S, [&](double x) { return cplx(1.0 - profile.phi_below(J, x)); });
  return {low, high};
}

namespace {

double split_denominator(const SphericalSpectrum& S, double t, const LPProfile& profile) {
  int N = S.G.N(), p = S.G.p;
  auto [low, high] = freq_split(S, t, profile);
  double lo = besov_norm(low, N, 1.0, 1.0, true, profile).value;
  double hi = besov_norm(high, N - p + 1, 1.0, 1.0, true, profile).value;
  double den = lo + std::pow(std::abs(t), -(p - 1) / 2.0) * hi;
  if (!(den > 0)) fail(Errc::ZeroDenominator, "initial data vanishes");
  return den;
}

double dual_exponent(double r) {
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

double band_factor(int N, int p, int j, double t, double r) {
  double delta = interp_delta(r);
  double a = std::pow(2.0, 2.0 * (N - p + 1) * delta * j);
  double near = std::pow(2.0, 2.0 * (p - 1) * delta * j);
  double far = t == 0.0 ? near : std::pow(std::abs(t), -(p - 1) * delta);
  return a * std::min(near, far);
}

}  // namespace

RatioParts split_dispersive_ratio(const SphericalSpectrum& S, double t, const LPProfile& profile) {
  if (S.G.p < 2) fail(Errc::OutOfRange, "split dispersive ratio needs p >= 2");
  RatioParts rp;
  rp.denominator = split_denominator(S, t, profile);
  rp.numerator = lattice_sup(propagator(S, t)).value;
  return rp;
}

RatioParts split_dispersive_ratio(const MultiplierKernel& u, const HTypeGroup& G, const LatticeGrid& l1_grid,
                                  double t, const LPProfile& profile) {
  if (G.p < 2) fail(Errc::OutOfRange, "split dispersive ratio needs p >= 2");
  RatioParts rp;
  rp.denominator = split_denominator(u.to_spectrum(G, l1_grid), t, profile);
  rp.numerator = u.propagated(t).sup().value;
  return rp;
}

double interp_delta(double r) {
  if (!(r >= 2.0)) fail(Errc::OutOfRange, "interpolation exponent needs r >= 2");
  return std::isinf(r) ? 0.5 : 0.5 - 1.0 / r;
}

RatioParts interp_band_ratio(const SphericalSpectrum& S, int j, double t, double r, const LPProfile& profile) {
  double fac = band_factor(S.G.N(), S.G.p, j, t, r);
  SphericalSpectrum piece = lp_project(S, j, profile);
  RatioParts rp;
  rp.numerator = spectrum_lr_norm(propagator(piece, t), r);
  rp.denominator = fac * spectrum_lr_norm(piece, dual_exponent(r));
  if (!(rp.denominator > 0)) fail(Errc::ZeroDenominator, "band piece vanishes");
  return rp;
}

RatioParts interp_band_ratio(const MultiplierKernel& u, const HTypeGroup& G, const LatticeGrid& l1_grid, int j,
                             double t, double r, const LPProfile& profile) {
  double fac = band_factor(G.N(), G.p, j, t, r);
  MultiplierKernel piece = u.with_factor([profile, j](double x) { return profile.phi(j, x); });
  RatioParts rp;
  if (std::isinf(r)) {
    rp.numerator = piece.propagated(t).sup().value;
    rp.denominator = fac * spectrum_lr_norm(piece.to_spectrum(G, l1_grid), 1.0);
  } else if (r == 2.0) {
    rp.numerator = piece.propagated(t).hdot_norm(0.0);
    rp.denominator = fac * piece.hdot_norm(0.0);
  } else {
    fail(Errc::OutOfRange, "continuum band ratio supports r = 2 and r = inf");
  }
  if (!(rp.denominator > 0)) fail(Errc::ZeroDenominator, "band piece vanishes");
  return rp;
}

namespace {

// Re sum_b w_b e^{-i lambda_b tau} a_b conj(b_b) for p = 1
struct CrossCorrelation {
  std::vector<double> lam;
  std::vector<cplx> prod;

  double operator()(double tau) const {
    double s = 0;
    for (size_t b = 0; b < lam.size(); ++b) s += (std::polar(1.0, -lam[b] * tau) * prod[b]).real();
    return s;
  }
};

double correlation_peak(const CrossCorrelation& X, double L, double h) {
  double step = h / 8.0;
  int n = (int)std::llround(L / step);
  double best = -std::numeric_limits<double>::infinity(), at = 0;
  for (int k = 0; k < n; ++k) {
    double tau = -0.5 * L + k * step;
    double v = X(tau);
    if (v > best) {
      best = v;
      at = tau;
    }
  }
  std::uintmax_t iters = 100;
  auto r = boost::math::tools::brent_find_minima([&](double tau) { return -X(tau); }, at - step, at + step, 52,
                                                 iters);
  return r.first;
}

}  // namespace

TransportReport heisenberg_transport(const SphericalSpectrum& S, int m0, const std::vector<double>& t_grid,
                                     const SupOptions& opt) {
  if (S.G.p != 1) fail(Errc::DimensionMismatch, "transport demonstration needs p = 1");
  if (m0 < 0 || m0 > S.M) fail(Errc::OutOfRange, "m0 outside the Laguerre cutoff");
  double mx = 0, stray = 0;
  for (int m = 0; m <= S.M; ++m)
    for (long b = 0; b < S.n_bins(); ++b) {
      double v = std::abs(S.at(m, b));
      mx = std::max(mx, v);
      if (m != m0 || S.grid.freq_index(b, 0) <= 0) stray = std::max(stray, v);
    }
  if (!(mx > 0)) fail(Errc::ZeroData, "transport data vanishes");
  if (stray > 1e-10 * mx) fail(Errc::SupportViolation, "data must live on m = m0 and lambda > 0");

  int d = S.G.d;
  CrossCorrelation X;
  std::vector<long> bins;
  std::vector<double> w;
  double w0 = binom_weight(m0, d);
  for (long b = 0; b < S.n_bins(); ++b) {
    if (S.grid.freq_index(b, 0) <= 0) continue;
    double lam = S.grid.lam_abs(b);
    bins.push_back(b);
    X.lam.push_back(lam);
    w.push_back(w0 * std::pow(lam, d));
  }
  X.prod.resize(bins.size());

  TransportReport rep;
  rep.times = t_grid;
  rep.sup_norms.resize(t_grid.size());
  rep.shifts.resize(t_grid.size());
  for (size_t k = 0; k < t_grid.size(); ++k) {
    SphericalSpectrum St = propagator(S, t_grid[k]);
    for (size_t q = 0; q < bins.size(); ++q) X.prod[q] = w[q] * St.at(m0, bins[q]) * std::conj(S.at(m0, bins[q]));
    double tau = correlation_peak(X, S.grid.L, S.grid.h());
    if (k > 0) tau += S.grid.L * std::round((rep.shifts[k - 1] - tau) / S.grid.L);
    rep.shifts[k] = tau;
    rep.sup_norms[k] = lattice_sup(St, opt).value;
  }
  double s0 = rep.sup_norms.empty() ? 0.0 : rep.sup_norms[0];
  for (double s : rep.sup_norms) rep.sup_norm_drift = std::max(rep.sup_norm_drift, std::abs(s - s0) / s0);
  if (t_grid.size() >= 2) {
    double n = t_grid.size(), mt = 0, ms = 0;
    for (size_t k = 0; k < t_grid.size(); ++k) {
      mt += t_grid[k] / n;
      ms += rep.shifts[k] / n;
    }
    double stt = 0, sts = 0;
    for (size_t k = 0; k < t_grid.size(); ++k) {
      stt += (t_grid[k] - mt) * (t_grid[k] - mt);
      sts += (t_grid[k] - mt) * (rep.shifts[k] - ms);
    }
    rep.measured_shift_slope = sts / stt;
  }
  return rep;
}

SphericalSpectrum single_mode_packet(const HTypeGroup& G, int M, const LatticeGrid& grid, int m0, double lam0,
                                     double width) {
  if (G.p != 1) fail(Errc::OutOfRange, "single-mode packets are p = 1 data");
  if (m0 < 0 || m0 > M) fail(Errc::OutOfRange, "m0 outside 0..M");
  SphericalSpectrum S = zero_spectrum(G, M, grid);
  for (long b = 0; b < S.n_bins(); ++b)
    if (grid.freq_index(b, 0) > 0) {
      double l = grid.lam_abs(b);
      S.at(m0, b) = std::exp(-(l - lam0) * (l - lam0) / width);
    }
  return S;
}

}  // namespace htype
