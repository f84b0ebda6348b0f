#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "htype/dispersive.hpp"
#include "htype/multiplier_kernel.hpp"
#include "htype/nls.hpp"
#include "htype/strichartz.hpp"

namespace htype {

struct ProbeTrial {
  double ratio = 0;
  double rescaled_ratio = 0;  // same trial after the paired dyadic rescaling
  double covariance_change() const { return std::abs(rescaled_ratio / ratio - 1.0); }
};

struct ProbeFamily {
  std::string name;
  std::vector<ProbeTrial> trials;

  double max_ratio() const;
  double min_ratio() const;
  double median_ratio() const;
  double worst_covariance() const;
  // every ratio finite and positive, and max <= max_spread * median; an upper
  // bound may be loose on part of the family, so only the top is constrained
  bool bounded(double max_spread = 100.0) const;
};

struct ProbeConfig {
  std::uint64_t seed = 1;
  int trials = 10;
  int jobs = 1;
};

// Random coefficients on every (m, lambda != 0) cell with a log-normal envelope in (2m+d)|lambda|.
SphericalSpectrum random_band_spectrum(const HTypeGroup& G, int M, const LatticeGrid& grid, std::mt19937_64& rng,
                                       double x0, double width);

// Real multiplier sum_{j=0,1} a_j phi(4^{-j} x) (1 + b cos(c log x)) with random a, b, c.
MultiplierKernel random_band_kernel(int d, int p, int M, const LPProfile& profile, std::mt19937_64& rng);

// Continuum numerators and lattice L^1 denominators; rescaled trial uses dilated(1), t/4, box L/4.
ProbeFamily split_dispersive_family(const HTypeGroup& G, int M, const LatticeGrid& l1_grid, const LPProfile& profile,
                                    const ProbeConfig& cfg);
ProbeFamily interp_band_family(const HTypeGroup& G, int M, const LatticeGrid& l1_grid, const LPProfile& profile,
                               const ProbeConfig& cfg);
// Random band-limited forcing paths on [0, T]; rescaled trial uses rescale_dyadic(., 1) and nodes T/4.
ProbeFamily duhamel_family(const HTypeGroup& G, int M, const LatticeGrid& grid, const AdmissiblePair& pair1,
                           const AdmissiblePair& pair2, double T, int n_t, const ProbeConfig& cfg);
ProbeFamily leibniz_family(const HTypeGroup& G, int M, const LatticeGrid& grid, double alpha, double s,
                           const LeibnizExponents& e, const ProbeConfig& cfg);

}  // namespace htype
