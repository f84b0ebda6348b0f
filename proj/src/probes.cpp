#include "htype/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "htype/errors.hpp"
#include "htype/parallel.hpp"
#include "htype/spectral_calculus.hpp"

namespace htype {

double ProbeFamily::max_ratio() const {
  double m = 0;
  for (const auto& t : trials) m = std::max(m, t.ratio);
  return m;
}

double ProbeFamily::min_ratio() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : trials) m = std::min(m, t.ratio);
  return m;
}

double ProbeFamily::worst_covariance() const {
  double m = 0;
  for (const auto& t : trials) m = std::max(m, t.covariance_change());
  return m;
}

bool ProbeFamily::bounded(double max_spread) const {
  if (trials.empty()) return false;
  for (const auto& t : trials)
    if (!std::isfinite(t.ratio) || !(t.ratio > 0)) return false;
  return max_ratio() <= max_spread * median_ratio();
}

double ProbeFamily::median_ratio() const {
  std::vector<double> v;
  for (const auto& t : trials) v.push_back(t.ratio);
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SphericalSpectrum random_band_spectrum(const HTypeGroup& G, int M, const LatticeGrid& grid, std::mt19937_64& rng,
                                       double x0, double width) {
  std::normal_distribution<double> n(0.0, 1.0);
  SphericalSpectrum S = zero_spectrum(G, M, grid);
  for (int m = 0; m <= M; ++m)
    for (long b = 0; b < S.n_bins(); ++b) {
      if (grid.key(b) == 0) continue;
      double u = std::log((2.0 * m + G.d) * grid.lam_abs(b) / x0) / width;
      S.at(m, b) = cplx(n(rng), n(rng)) * std::exp(-u * u);
    }
  return S;
}

MultiplierKernel random_band_kernel(int d, int p, int M, const LPProfile& profile, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double a0 = 0.2 + U(rng), a1 = 0.2 + U(rng), b = 0.5 * U(rng), c = 1.0 + 3.0 * U(rng);
  auto theta = [profile, a0, a1, b, c](double x) {
    if (x <= 0) return 0.0;
    return (a0 * profile.phi(0, x) + a1 * profile.phi(1, x)) * (1.0 + b * std::cos(c * std::log(x)));
  };
  return MultiplierKernel(d, p, M, theta, profile.support_lo(), 4.0 * profile.support_hi());
}

namespace {

LatticeGrid quarter_box(const LatticeGrid& g) { return make_lattice(g.p, std::ldexp(g.L, -2), g.n_s); }

double log_uniform(std::mt19937_64& rng, double a, double b) {
  std::uniform_real_distribution<double> U(std::log(a), std::log(b));
  return std::exp(U(rng));
}

}  // namespace

ProbeFamily split_dispersive_family(const HTypeGroup& G, int M, const LatticeGrid& l1_grid, const LPProfile& profile,
                                    const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<MultiplierKernel> ks;
  std::vector<double> ts;
  for (int i = 0; i < cfg.trials; ++i) {
    ks.push_back(random_band_kernel(G.d, G.p, M, profile, rng));
    ts.push_back(log_uniform(rng, 0.05, 20.0));
  }
  ProbeFamily fam{"split_dispersive_ratio", std::vector<ProbeTrial>(cfg.trials)};
  LatticeGrid small = quarter_box(l1_grid);
  parallel_for(cfg.trials, cfg.jobs, [&](int i) {
    fam.trials[i].ratio = split_dispersive_ratio(ks[i], G, l1_grid, ts[i], profile).ratio();
    fam.trials[i].rescaled_ratio = split_dispersive_ratio(ks[i].dilated(1), G, small, ts[i] / 4, profile).ratio();
  });
  return fam;
}

ProbeFamily interp_band_family(const HTypeGroup& G, int M, const LatticeGrid& l1_grid, const LPProfile& profile,
                               const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> J(-1, 1);
  std::vector<MultiplierKernel> ks;
  std::vector<double> ts;
  std::vector<int> js;
  for (int i = 0; i < cfg.trials; ++i) {
    ks.push_back(random_band_kernel(G.d, G.p, M, profile, rng));
    ts.push_back(log_uniform(rng, 0.05, 20.0));
    js.push_back(J(rng));
  }
  ProbeFamily fam{"interp_band_ratio", std::vector<ProbeTrial>(cfg.trials)};
  LatticeGrid small = quarter_box(l1_grid);
  parallel_for(cfg.trials, cfg.jobs, [&](int i) {
    fam.trials[i].ratio = interp_band_ratio(ks[i], G, l1_grid, js[i], ts[i], INFINITY, profile).ratio();
    fam.trials[i].rescaled_ratio =
        interp_band_ratio(ks[i].dilated(1), G, small, js[i] + 1, ts[i] / 4, INFINITY, profile).ratio();
  });
  return fam;
}

ProbeFamily duhamel_family(const HTypeGroup& G, int M, const LatticeGrid& grid, const AdmissiblePair& pair1,
                           const AdmissiblePair& pair2, double T, int n_t, const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<SolverPath> paths;
  for (int i = 0; i < cfg.trials; ++i) {
    SolverPath F;
    F.t = uniform_nodes(T, n_t);
    double x0 = 0.5 + 2.0 * U(rng);
    for (size_t k = 0; k < F.t.size(); ++k) F.states.push_back(random_band_spectrum(G, M, grid, rng, x0, 0.6));
    paths.push_back(std::move(F));
  }
  ProbeFamily fam{"duhamel_quotient", std::vector<ProbeTrial>(cfg.trials)};
  parallel_for(cfg.trials, cfg.jobs, [&](int i) {
    const SolverPath& F = paths[i];
    SolverPath Fr;
    for (size_t k = 0; k < F.t.size(); ++k) {
      Fr.t.push_back(std::ldexp(F.t[k], -2));
      Fr.states.push_back(rescale_dyadic(F.states[k], 1));
    }
    fam.trials[i].ratio = duhamel_quotient(F, pair1, pair2).ratio();
    fam.trials[i].rescaled_ratio = duhamel_quotient(Fr, pair1, pair2).ratio();
  });
  return fam;
}

ProbeFamily leibniz_family(const HTypeGroup& G, int M, const LatticeGrid& grid, double alpha, double s,
                           const LeibnizExponents& e, const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<SphericalSpectrum> us;
  for (int i = 0; i < cfg.trials; ++i) us.push_back(random_band_spectrum(G, M, grid, rng, 0.5 + 2.0 * U(rng), 0.6));
  ProbeFamily fam{"leibniz_ratio_probe", std::vector<ProbeTrial>(cfg.trials)};
  parallel_for(cfg.trials, cfg.jobs, [&](int i) {
    fam.trials[i].ratio = leibniz_ratio_probe(us[i], alpha, s, e).ratio();
    fam.trials[i].rescaled_ratio = leibniz_ratio_probe(rescale_dyadic(us[i], 1), alpha, s, e).ratio();
  });
  return fam;
}

}  // namespace htype
