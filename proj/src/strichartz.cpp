#include "htype/strichartz.hpp"

#include <algorithm>
#include <cmath>

#include "htype/dispersive.hpp"
#include "htype/errors.hpp"
#include "htype/parallel.hpp"
#include "htype/spectral_calculus.hpp"

namespace htype {

double StrichartzCurve::last_doubling_change() const {
  size_t n = quotient.size();
  if (n < 2) return 0.0;
  return std::abs(quotient[n - 1] - quotient[n - 2]) / quotient[n - 1];
}

QuadRule strichartz_time_rule(double T, const StrichartzOptions& opt) {
  if (!(T > 0)) fail(Errc::OutOfRange, "horizon T must be positive");
  if (opt.panels < 1 || opt.nodes < 1) fail(Errc::OutOfRange, "time rule needs panels and nodes");
  QuadRule r;
  r.x.push_back(0.0);
  r.w.push_back(0.0);
  auto add = [&](double a, double b) {
    QuadRule g = gauss_legendre(opt.nodes, a, b);
    r.x.insert(r.x.end(), g.x.begin(), g.x.end());
    r.w.insert(r.w.end(), g.w.begin(), g.w.end());
  };
  add(0.0, std::ldexp(T, -opt.panels));
  for (int k = opt.panels - 1; k >= 0; --k) add(std::ldexp(T, -k - 1), std::ldexp(T, -k));
  return r;
}

namespace {

void check_pair(const AdmissiblePair& pair) {
  if (!pair.admissible || pair.endpoint) fail(Errc::NotAdmissible, "quotients need a non-endpoint admissible pair");
}

// (q-th power integral over [-T_k, T_k]) for each level from the values at +-t nodes
StrichartzCurve assemble(const QuadRule& rule, const std::vector<double>& plus, const std::vector<double>& minus,
                         double q, double T, int panels, double denom, double sigma) {
  StrichartzCurve c;
  c.sigma = sigma;
  for (int k = panels; k >= 0; --k) {
    double Tk = std::ldexp(T, -k);
    double acc = 0;
    for (size_t i = 0; i < rule.x.size(); ++i) {
      if (rule.x[i] > Tk * (1 + 1e-12)) continue;
      if (std::isinf(q))
        acc = std::max({acc, plus[i], minus[i]});
      else
        acc += rule.w[i] * (std::pow(plus[i], q) + std::pow(minus[i], q));
    }
    double num = std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
    c.T.push_back(Tk);
    c.quotient.push_back(num / denom);
  }
  return c;
}

}  // namespace

StrichartzCurve strichartz_quotient(const MultiplierKernel& u0, const AdmissiblePair& pair, double T,
                                    const StrichartzOptions& opt) {
  check_pair(pair);
  double r = pair.r.to_double(), q = pair.q.to_double();
  if (r != 2.0 && !std::isinf(r)) fail(Errc::OutOfRange, "continuum quotients support r = 2 and r = inf");
  double sigma = to_double(scaling_sigma(pair.q, pair.r, u0.N()));
  double denom = u0.hdot_norm(sigma);
  if (!(denom > 0)) fail(Errc::ZeroData, "initial datum vanishes");
  QuadRule rule = strichartz_time_rule(T, opt);
  size_t n = rule.x.size();
  std::vector<double> plus(n, u0.hdot_norm(0.0)), minus = plus;
  if (std::isinf(r)) {
    // real multiplier: at time 0 the kernel at -t is the conjugate of the kernel at t
    bool even = u0.time() == 0.0;
    int jobs_n = (int)(even ? n : 2 * n);
    parallel_for(jobs_n, opt.jobs, [&](int i) {
      double t = i < (int)n ? rule.x[i] : -rule.x[i - n];
      (i < (int)n ? plus[i] : minus[i - n]) = u0.propagated(t).sup(opt.sup).value;
    });
    if (even) minus = plus;
  }
  return assemble(rule, plus, minus, q, T, opt.panels, denom, sigma);
}

StrichartzCurve strichartz_quotient(const SphericalSpectrum& S0, const AdmissiblePair& pair, double T,
                                    const StrichartzOptions& opt) {
  check_pair(pair);
  check_finite(S0);
  double r = pair.r.to_double(), q = pair.q.to_double();
  double sigma = to_double(scaling_sigma(pair.q, pair.r, S0.G.N()));
  double denom = plancherel_norm(frac_power(S0, sigma, false));
  if (!(denom > 0)) fail(Errc::ZeroData, "initial datum vanishes");
  double window = aliasing_window(S0);
  if (T > window)
    fail(Errc::AliasingWindowExceeded,
         "T = " + std::to_string(T) + " exceeds the aliasing-safe window " + std::to_string(window));
  QuadRule rule = strichartz_time_rule(T, opt);
  size_t n = rule.x.size();
  std::vector<double> plus(n), minus(n);
  parallel_for((int)(2 * n), opt.jobs, [&](int i) {
    double t = i < (int)n ? rule.x[i] : -rule.x[i - n];
    SphericalSpectrum u = propagator(S0, t);
    double v = std::isinf(r) ? lattice_sup(u, opt.sup).value : spectrum_lr_norm(u, r);
    (i < (int)n ? plus[i] : minus[i - n]) = v;
  });
  return assemble(rule, plus, minus, q, T, opt.panels, denom, sigma);
}

namespace {

double dual(double r) { return r == 1.0 ? INFINITY : (std::isinf(r) ? 1.0 : r / (r - 1.0)); }

double time_norm(const std::vector<double>& t, const std::vector<double>& v, double q) {
  if (std::isinf(q) || t.size() == 1) return *std::max_element(v.begin(), v.end());
  double acc = 0;
  for (size_t k = 1; k < t.size(); ++k)
    acc += 0.5 * (t[k] - t[k - 1]) * (std::pow(v[k - 1], q) + std::pow(v[k], q));
  return std::pow(acc, 1.0 / q);
}

}  // namespace

RatioValue duhamel_quotient(const SolverPath& F, const AdmissiblePair& pair1, const AdmissiblePair& pair2) {
  check_pair(pair1);
  check_pair(pair2);
  if (F.states.empty()) fail(Errc::OutOfRange, "empty path");
  int N = F.states[0].G.N();
  double sigma = to_double(scaling_sigma(pair1.q, pair1.r, N)) + to_double(scaling_sigma(pair2.q, pair2.r, N));
  double q1 = pair1.q.to_double(), r1 = pair1.r.to_double();
  double q2d = dual(pair2.q.to_double()), r2d = dual(pair2.r.to_double());

  size_t n = F.states.size();
  std::vector<double> rhs(n);
  for (size_t k = 0; k < n; ++k) {
    const auto& S = F.states[k];
    rhs[k] = (sigma == 0.0 && r2d == 2.0) ? plancherel_norm(S) : sobolev_norm(S, sigma, r2d, true).value;
  }
  RatioValue rv;
  rv.denominator = time_norm(F.t, rhs, q2d);
  if (rv.denominator == 0) {
    rv.defined_zero = true;
    return rv;
  }
  auto D = duhamel_all(F);
  std::vector<double> lhs(n);
  for (size_t k = 0; k < n; ++k) lhs[k] = fast_lr_norm(D[k], r1);
  rv.numerator = time_norm(F.t, lhs, q1);
  return rv;
}

}  // namespace htype
