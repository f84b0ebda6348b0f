#include "htype/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "htype/errors.hpp"

namespace htype {

int LatticeGrid::n_bins() const {
  long n = 1;
  for (int a = 0; a < p; ++a) n *= n_s;
  return (int)n;
}

double LatticeGrid::dlam() const { return 2.0 * std::numbers::pi / L; }

int LatticeGrid::freq_index(long b, int axis) const {
  for (int a = p - 1; a > axis; --a) b /= n_s;
  int i = (int)(b % n_s);
  return i < n_s / 2 ? i : i - n_s;
}

long LatticeGrid::key(long b) const {
  long k = 0;
  for (int a = p - 1; a >= 0; --a) {
    long i = b % n_s;
    b /= n_s;
    long j = i < n_s / 2 ? i : i - n_s;
    k += j * j;
  }
  return k;
}

double LatticeGrid::lam_abs(long b) const { return dlam() * std::sqrt((double)key(b)); }

std::vector<double> LatticeGrid::lam_abs_table() const {
  std::vector<double> t(n_bins());
  for (long b = 0; b < (long)t.size(); ++b) t[b] = lam_abs(b);
  return t;
}

double LatticeGrid::lam_max() const {
  long half = n_s / 2;
  return dlam() * std::sqrt((double)(p * half * half));
}

long LatticeGrid::embed(long b, int n_big) const {
  long out = 0;
  long stride = 1;
  for (int a = p - 1; a >= 0; --a) {
    long i = b % n_s;
    b /= n_s;
    long j = i < n_s / 2 ? i : i - n_s;
    long ib = j >= 0 ? j : j + n_big;
    out += ib * stride;
    stride *= n_big;
  }
  return out;
}

LatticeGrid make_lattice(int p, double L, int n_s) {
  if (p < 1) fail(Errc::DimensionMismatch, "lattice dimension must be positive");
  if (!(L > 0)) fail(Errc::NonpositiveScale, "box side must be positive");
  if (n_s < 2 || n_s % 2 != 0) fail(Errc::GridTooCoarse, "n_s must be even and at least 2");
  return LatticeGrid{p, L, n_s};
}

SphericalSpectrum zero_spectrum(const HTypeGroup& G, int M, const LatticeGrid& grid) {
  if (grid.p != G.p) fail(Errc::DimensionMismatch, "lattice dimension differs from center dimension");
  if (M < 0) fail(Errc::CutoffTooLarge, "Laguerre cutoff must be nonnegative");
  SphericalSpectrum S;
  S.G = G;
  S.M = M;
  S.grid = grid;
  S.c.assign((size_t)(M + 1) * grid.n_bins(), cplx(0));
  return S;
}

std::vector<double> lattice_point(const LatticeGrid& g, long k) {
  std::vector<double> s(g.p);
  double h = g.h();
  for (int a = g.p - 1; a >= 0; --a) {
    s[a] = -0.5 * g.L + (double)(k % g.n_s) * h;
    k /= g.n_s;
  }
  return s;
}

double inversion_constant(int d, int p) { return std::pow(2.0 * std::numbers::pi, -(double)(d + p)); }

void check_same_grid(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  if (a.G.d != b.G.d || a.G.p != b.G.p || a.M != b.M || !(a.grid == b.grid))
    fail(Errc::GridMismatch, "spectra live on different grids (M " + std::to_string(a.M) + " vs " +
                                 std::to_string(b.M) + ", L " + std::to_string(a.grid.L) + " vs " +
                                 std::to_string(b.grid.L) + ")");
}

void check_finite(const SphericalSpectrum& S) {
  for (const auto& v : S.c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(Errc::NonFiniteMultiplier, "spectrum has non-finite coefficients");
}

SphericalSpectrum operator+(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  check_same_grid(a, b);
  SphericalSpectrum r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

SphericalSpectrum operator-(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  check_same_grid(a, b);
  SphericalSpectrum r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

SphericalSpectrum operator*(cplx a, const SphericalSpectrum& S) {
  SphericalSpectrum r = S;
  for (auto& v : r.c) v *= a;
  return r;
}

}  // namespace htype
