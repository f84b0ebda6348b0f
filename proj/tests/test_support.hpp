#pragma once

#include <cmath>
#include <random>

#include "htype/spectrum.hpp"
#include "htype/transform.hpp"

namespace testsupport {

// Random coefficients on every (m, lambda != 0) cell.
inline htype::SphericalSpectrum random_spectrum(const htype::HTypeGroup& G, int M, const htype::LatticeGrid& grid,
                                                unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  auto S = htype::zero_spectrum(G, M, grid);
  for (int m = 0; m <= M; ++m)
    for (long b = 0; b < S.n_bins(); ++b)
      if (grid.key(b) != 0) S.at(m, b) = htype::cplx(n(rng), n(rng));
  return S;
}

// Random coefficients with a smooth envelope in x = (2m+d)|lambda| centred at x0.
inline htype::SphericalSpectrum smooth_spectrum(const htype::HTypeGroup& G, int M, const htype::LatticeGrid& grid,
                                                unsigned seed, double x0, double width) {
  auto S = random_spectrum(G, M, grid, seed);
  for (int m = 0; m <= M; ++m)
    for (long b = 0; b < S.n_bins(); ++b) {
      double x = (2.0 * m + G.d) * grid.lam_abs(b);
      double u = std::log(x / x0) / width;
      S.at(m, b) *= std::exp(-u * u);
    }
  return S;
}

inline double rel_diff(const htype::SphericalSpectrum& a, const htype::SphericalSpectrum& b) {
  double num = 0, den = 0;
  for (size_t i = 0; i < a.c.size(); ++i) {
    num += std::norm(a.c[i] - b.c[i]);
    den += std::norm(b.c[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double max_abs_diff(const htype::SphericalSpectrum& a, const htype::SphericalSpectrum& b) {
  double m = 0;
  for (size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

inline double max_abs(const htype::SphericalSpectrum& a) {
  double m = 0;
  for (auto v : a.c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testsupport
