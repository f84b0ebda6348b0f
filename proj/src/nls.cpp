#include "htype/nls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "htype/errors.hpp"
#include "htype/parallel.hpp"
#include "htype/spectral_calculus.hpp"

namespace htype {

bool is_odd_integer(double alpha) { return alpha == std::floor(alpha) && std::fmod(alpha, 2.0) == 1.0; }

namespace {

int pad_for(double alpha, bool allow_non_odd) {
  if (!(alpha > 1)) fail(Errc::InvalidAlpha, "nonlinearity degree must exceed 1");
  if (is_odd_integer(alpha)) return (int)((alpha + 1) / 2);
  if (!allow_non_odd) fail(Errc::InvalidAlpha, "non-odd nonlinearity degree needs the allow_non_odd flag");
  return 2;
}

LatticeGrid padded_lattice(const LatticeGrid& g, int pad) { return make_lattice(g.p, g.L, g.n_s * pad); }

RadialGrid plan_rho(const HTypeGroup& G, int M, const LatticeGrid& grid, int pad, int M_out) {
  LatticeGrid big = padded_lattice(grid, pad);
  int Mr = std::max(M_out, pad * (M + 1));
  return resolved_radial_grid(Mr, G.d, big.lam_min(), big.lam_max());
}

}  // namespace

NonlinearityPlan::NonlinearityPlan(const HTypeGroup& G, int M, const LatticeGrid& grid, double alpha,
                                   bool allow_non_odd, int M_out, std::optional<LatticeGrid> out_grid)
    : alpha_(alpha),
      pad_(pad_for(alpha, allow_non_odd)),
      inv_(G, M, grid, plan_rho(G, M, grid, pad_, M_out < 0 ? M : M_out), padded_lattice(grid, pad_)),
      fwd_(G, M_out < 0 ? M : M_out, out_grid.value_or(grid), inv_.rho(), padded_lattice(grid, pad_)) {}

RadialField NonlinearityPlan::field(const SphericalSpectrum& S) const {
  if (!(S.grid == inv_.spec_grid()) || S.M != inv_.M()) fail(Errc::GridMismatch, "spectrum does not match the plan");
  return inv_.inverse(S);
}

RadialField NonlinearityPlan::pointwise(const RadialField& u, cplx mu) const {
  RadialField f = u;
  bool odd = is_odd_integer(alpha_);
  int k = (int)((alpha_ - 1) / 2);
  for (auto& v : f.v) {
    double n = std::norm(v);
    double w;
    if (odd) {
      w = 1.0;
      for (int i = 0; i < k; ++i) w *= n;
    } else {
      w = std::pow(n, 0.5 * (alpha_ - 1));
    }
    v = mu * w * v;
  }
  return f;
}

SphericalSpectrum NonlinearityPlan::project(const RadialField& f) const { return fwd_.forward(f); }

SphericalSpectrum NonlinearityPlan::apply(const SphericalSpectrum& S, cplx mu) const {
  return project(pointwise(field(S), mu));
}

SphericalSpectrum nonlinearity(const SphericalSpectrum& S, double alpha, cplx mu) {
  return NonlinearityPlan(S.G, S.M, S.grid, alpha).apply(S, mu);
}

double PicardDiagnostics::contraction_factor() const {
  double floor = 1e-12 * (norm_xs.empty() ? 0.0 : norm_xs.back());
  double logsum = 0;
  int n = 0;
  for (size_t k = 1; k < ratio.size(); ++k) {
    if (d_xs[k] <= floor) break;
    logsum += std::log(ratio[k]);
    ++n;
  }
  return n == 0 ? 0.0 : std::exp(logsum / n);
}

std::vector<double> uniform_nodes(double T, int n_t) {
  if (!(T > 0) || n_t < 1) fail(Errc::OutOfRange, "time grid needs T > 0 and at least one step");
  std::vector<double> t(n_t + 1);
  for (int k = 0; k <= n_t; ++k) t[k] = T * k / n_t;
  return t;
}

SolverPath free_flight(const SphericalSpectrum& u0, const std::vector<double>& t) {
  SolverPath p;
  p.t = t;
  for (double tk : t) p.states.push_back(propagator(u0, tk));
  return p;
}

namespace {

void check_path(const SolverPath& F) {
  if (F.t.empty() || F.t.size() != F.states.size()) fail(Errc::OutOfRange, "path needs matching nodes and states");
  for (size_t k = 1; k < F.t.size(); ++k)
    if (!(F.t[k] > F.t[k - 1])) fail(Errc::OutOfRange, "path nodes must increase");
}

void axpy(SphericalSpectrum& y, cplx a, const SphericalSpectrum& x) {
  for (size_t i = 0; i < y.c.size(); ++i) y.c[i] += a * x.c[i];
}

}  // namespace

std::vector<SphericalSpectrum> duhamel_all(const SolverPath& F) {
  check_path(F);
  size_t n = F.t.size();
  std::vector<SphericalSpectrum> G(n);
  for (size_t k = 0; k < n; ++k) G[k] = propagator(F.states[k], -F.t[k]);
  std::vector<SphericalSpectrum> out(n);
  SphericalSpectrum acc = zero_spectrum(F.states[0].G, F.states[0].M, F.states[0].grid);
  for (size_t k = 0; k < n; ++k) {
    if (k > 0) {
      double h = 0.5 * (F.t[k] - F.t[k - 1]);
      axpy(acc, h, G[k - 1]);
      axpy(acc, h, G[k]);
    }
    out[k] = propagator(acc, F.t[k]);
  }
  return out;
}

SphericalSpectrum duhamel(const SolverPath& F, double t) {
  check_path(F);
  if (t < F.t.front() || t > F.t.back()) fail(Errc::TimeOutOfRange, "Duhamel time outside the path");
  SphericalSpectrum acc = zero_spectrum(F.states[0].G, F.states[0].M, F.states[0].grid);
  SphericalSpectrum prev = propagator(F.states[0], -F.t[0]);
  for (size_t k = 1; k < F.t.size() && F.t[k - 1] < t; ++k) {
    SphericalSpectrum cur = propagator(F.states[k], -F.t[k]);
    double hi = std::min(t, F.t[k]);
    double frac = (hi - F.t[k - 1]) / (F.t[k] - F.t[k - 1]);
    // trapezoid on [t_{k-1}, hi] with the linear interpolant of G
    double h = 0.5 * (hi - F.t[k - 1]);
    axpy(acc, h * (2.0 - frac), prev);
    axpy(acc, h * frac, cur);
    prev = std::move(cur);
  }
  return propagator(acc, t);
}

double fast_lr_norm(const SphericalSpectrum& S, double r) {
  if (r == 2.0) return plancherel_norm(S);
  RadialGrid rg = default_radial_grid(S);
  if (std::isinf(r)) {
    rg.rho.insert(rg.rho.begin(), 0.0);
    rg.w.insert(rg.w.begin(), 0.0);
  }
  return lr_norm(inverse_transform(S, rg, S.grid), r);
}

namespace {

double xst_norm_jobs(const SolverPath& path, double s, const AdmissiblePair& pair, double s_star, int jobs) {
  size_t n = path.states.size();
  std::vector<double> hs(n), lr(n);
  double r = pair.r.to_double(), q = pair.q.to_double();
  parallel_for((int)n, jobs, [&](int k) {
    hs[k] = plancherel_norm(frac_power(path.states[k], s, true));
    lr[k] = fast_lr_norm(frac_power(path.states[k], s - s_star, true), r);
  });
  double a = *std::max_element(hs.begin(), hs.end());
  double b = 0;
  if (std::isinf(q) || n == 1) {
    b = *std::max_element(lr.begin(), lr.end());
  } else {
    for (size_t k = 1; k < n; ++k) b += 0.5 * (path.t[k] - path.t[k - 1]) * (std::pow(lr[k - 1], q) + std::pow(lr[k], q));
    b = std::pow(b, 1.0 / q);
  }
  return a + b;
}

SolverPath difference(const SolverPath& a, const SolverPath& b) {
  SolverPath d;
  d.t = a.t;
  for (size_t k = 0; k < a.states.size(); ++k) d.states.push_back(a.states[k] - b.states[k]);
  return d;
}

SolverPath picard_map(const SolverPath& u, const SolverPath& free, const NonlinearityPlan& plan, cplx mu, int jobs) {
  SolverPath F;
  F.t = u.t;
  F.states.resize(u.states.size());
  parallel_for((int)u.states.size(), jobs, [&](int k) { F.states[k] = plan.apply(u.states[k], mu); });
  auto D = duhamel_all(F);
  SolverPath next;
  next.t = u.t;
  for (size_t k = 0; k < D.size(); ++k) {
    SphericalSpectrum v = free.states[k];
    axpy(v, cplx(0, -1), D[k]);
    next.states.push_back(std::move(v));
  }
  return next;
}

}  // namespace

double xst_norm(const SolverPath& path, double s, const AdmissiblePair& pair, double s_star) {
  check_path(path);
  return xst_norm_jobs(path, s, pair, s_star, 1);
}

SolverPath picard_solve(const SphericalSpectrum& u0, const NLSParams& params, int n_iter) {
  check_finite(u0);
  std::vector<double> t = uniform_nodes(params.T, params.n_t);
  NonlinearityPlan plan(u0.G, u0.M, u0.grid, params.alpha, params.allow_non_odd);
  SolverPath free = free_flight(u0, t);
  SolverPath u = free;
  PicardDiagnostics diag;
  int rising = 0;
  for (int n = 0; n < n_iter; ++n) {
    SolverPath next = picard_map(u, free, plan, params.mu, params.jobs);
    SolverPath diff = difference(next, u);
    double dxs = xst_norm_jobs(diff, params.s, params.pair, params.s_star, params.jobs);
    double dx0 = xst_norm_jobs(diff, 0.0, params.pair, params.s_star, params.jobs);
    double nxs = xst_norm_jobs(next, params.s, params.pair, params.s_star, params.jobs);
    if (!std::isfinite(dxs) || !std::isfinite(nxs)) fail(Errc::DivergenceDetected, "Picard iterate is not finite");
    if (!diag.d_xs.empty()) {
      diag.ratio.push_back(diag.d_xs.back() > 0 ? dxs / diag.d_xs.back() : 0.0);
      diag.ratio0.push_back(diag.d_x0.back() > 0 ? dx0 / diag.d_x0.back() : 0.0);
    } else {
      diag.ratio.push_back(0.0);
      diag.ratio0.push_back(0.0);
    }
    diag.d_xs.push_back(dxs);
    diag.d_x0.push_back(dx0);
    diag.norm_xs.push_back(nxs);
    diag.mass.push_back(mass_drift(next));
    diag.iterations = n + 1;
    u = std::move(next);
    if (dxs <= 1e-10 * nxs) {
      diag.converged = true;
      break;
    }
    rising = (n > 0 && diag.ratio.back() > 1.0) ? rising + 1 : 0;
    if (rising >= 3)
      fail(Errc::DivergenceDetected, "Picard distance grew for 3 consecutive iterations (last ratio " +
                                         std::to_string(diag.ratio.back()) + ")");
  }
  u.diag = diag;
  return u;
}

double fixed_point_residual(const SolverPath& path, const SphericalSpectrum& u0, const NLSParams& params) {
  NonlinearityPlan plan(u0.G, u0.M, u0.grid, params.alpha, params.allow_non_odd);
  SolverPath free = free_flight(u0, path.t);
  SolverPath next = picard_map(path, free, plan, params.mu, params.jobs);
  double num = xst_norm_jobs(difference(next, path), params.s, params.pair, params.s_star, params.jobs);
  double den = xst_norm_jobs(path, params.s, params.pair, params.s_star, params.jobs);
  return den > 0 ? num / den : num;
}

double mass_drift(const SolverPath& path) {
  if (path.states.empty()) return 0.0;
  double m0 = plancherel_norm(path.states[0]);
  if (m0 == 0) return 0.0;
  double drift = 0;
  for (const auto& s : path.states) drift = std::max(drift, std::abs(plancherel_norm(s) - m0) / m0);
  return drift;
}

SolverPath strang_reference(const SphericalSpectrum& u0, const NLSParams& params, int n_steps) {
  if (params.mu.imag() != 0) fail(Errc::OutOfRange, "Strang reference needs real mu");
  NonlinearityPlan plan(u0.G, u0.M, u0.grid, params.alpha, params.allow_non_odd);
  std::vector<double> t = uniform_nodes(params.T, n_steps);
  double dt = params.T / n_steps, mu = params.mu.real(), a = params.alpha;
  SolverPath path;
  path.t = t;
  SphericalSpectrum u = u0;
  path.states.push_back(u);
  for (int k = 0; k < n_steps; ++k) {
    u = propagator(u, 0.5 * dt);
    RadialField f = plan.field(u);
    for (auto& v : f.v) v *= std::polar(1.0, -mu * dt * std::pow(std::norm(v), 0.5 * (a - 1)));
    u = propagator(plan.project(f), 0.5 * dt);
    path.states.push_back(u);
  }
  return path;
}

RatioValue leibniz_ratio_probe(const SphericalSpectrum& S, double alpha, double s, const LeibnizExponents& e) {
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  for (double x : {e.p, e.q, e.r})
    if (!(x >= 1.0)) fail(Errc::ExponentRelationViolated, "Lebesgue exponents must be >= 1");
  if (std::abs(inv(e.p) - inv(e.q) - (alpha - 1) * inv(e.r)) > 1e-12)
    fail(Errc::ExponentRelationViolated, "need 1/p = 1/q + (alpha-1)/r");
  bool odd = is_odd_integer(alpha);
  if (!odd && alpha < std::ceil(s)) fail(Errc::InvalidAlpha, "non-odd alpha must be at least ceil(s)");
  RatioValue rv;
  double mx = 0;
  for (auto v : S.c) mx = std::max(mx, std::abs(v));
  if (mx == 0) {
    rv.defined_zero = true;
    return rv;
  }
  if (s == 0.0) {
    NonlinearityPlan plan(S.G, S.M, S.grid, alpha, true);
    RadialField u = plan.field(S);
    RadialField F = plan.pointwise(u, 1.0);
    rv.numerator = lr_norm(F, e.p);
    rv.denominator = std::pow(lr_norm(u, e.r), alpha - 1) * lr_norm(u, e.q);
  } else {
    LatticeGrid out = padded_lattice(S.grid, pad_for(alpha, true));
    int M_out = (int)std::ceil(alpha) * (S.M + 1);
    NonlinearityPlan plan(S.G, S.M, S.grid, alpha, true, M_out, out);
    SphericalSpectrum F = plan.apply(S, 1.0);
    rv.numerator = sobolev_norm(F, s, e.p, true).value;
    rv.denominator = std::pow(spectrum_lr_norm(S, e.r), alpha - 1) * sobolev_norm(S, s, e.q, true).value;
  }
  if (!(rv.denominator > 0)) fail(Errc::ZeroDenominator, "probe denominator vanishes");
  return rv;
}

}  // namespace htype
