#pragma once

#include <complex>
#include <vector>

#include "htype/group.hpp"
#include "htype/quadrature.hpp"

namespace htype {

// Uniform periodic grid s_k = -L/2 + k h on [-L/2, L/2)^p, h = L / n_s, and
// its dual lattice lambda_j = (2 pi / L) j with j in [-n_s/2, n_s/2) per axis.
// Bins are stored in FFT order, axis 0 slowest.
struct LatticeGrid {
  int p = 1;
  double L = 0;
  int n_s = 0;

  int n_bins() const;
  double h() const { return L / n_s; }
  double dlam() const;
  // signed frequency index of bin b along axis a
  int freq_index(long b, int axis) const;
  // sum of squared frequency indices; |lambda| = dlam * sqrt(key)
  long key(long b) const;
  double lam_abs(long b) const;
  std::vector<double> lam_abs_table() const;
  double lam_min() const { return dlam(); }
  double lam_max() const;
  // bin of the same frequency on a finer grid with n_big points per axis
  long embed(long b, int n_big) const;
  bool operator==(const LatticeGrid& o) const { return p == o.p && L == o.L && n_s == o.n_s; }
};

LatticeGrid make_lattice(int p, double L, int n_s);

struct SphericalSpectrum {
  HTypeGroup G;
  int M = 0;
  LatticeGrid grid;
  std::vector<cplx> c;  // index m * n_bins + b

  int n_bins() const { return grid.n_bins(); }
  cplx& at(int m, long b) { return c[(size_t)m * n_bins() + b]; }
  const cplx& at(int m, long b) const { return c[(size_t)m * n_bins() + b]; }
};

SphericalSpectrum zero_spectrum(const HTypeGroup& G, int M, const LatticeGrid& grid);

// Samples of a z-radial function on (rho nodes) x (s box); index i * n_bins + k.
struct RadialField {
  HTypeGroup G;
  RadialGrid rho;
  LatticeGrid grid;
  std::vector<cplx> v;

  cplx& at(int i, long k) { return v[(size_t)i * grid.n_bins() + k]; }
  const cplx& at(int i, long k) const { return v[(size_t)i * grid.n_bins() + k]; }
};

// s-coordinates of lattice point k.
std::vector<double> lattice_point(const LatticeGrid& g, long k);

// (2 pi)^{-(d+p)}
double inversion_constant(int d, int p);

void check_same_grid(const SphericalSpectrum& a, const SphericalSpectrum& b);
void check_finite(const SphericalSpectrum& S);

SphericalSpectrum operator+(const SphericalSpectrum& a, const SphericalSpectrum& b);
SphericalSpectrum operator-(const SphericalSpectrum& a, const SphericalSpectrum& b);
SphericalSpectrum operator*(cplx a, const SphericalSpectrum& S);

}  // namespace htype
