#pragma once

#include <map>
#include <vector>

#include "htype/spectrum.hpp"

namespace htype {

// Precomputed Laguerre tables for one (spectral lattice, radial grid, field lattice) triple.
// The field lattice shares L with the spectral lattice and may be finer (zero padding).
class SpectralTransform {
 public:
  SpectralTransform(const HTypeGroup& G, int M, const LatticeGrid& spec, const RadialGrid& rho,
                    const LatticeGrid& field);

  SphericalSpectrum forward(const RadialField& f) const;
  RadialField inverse(const SphericalSpectrum& S) const;

  const RadialGrid& rho() const { return rho_; }
  const LatticeGrid& field_grid() const { return field_; }
  const LatticeGrid& spec_grid() const { return spec_; }
  int M() const { return M_; }

 private:
  HTypeGroup G_;
  int M_;
  LatticeGrid spec_, field_;
  RadialGrid rho_;
  std::vector<long> bin_key_slot_;  // per spectral bin: table slot, -1 for lambda = 0
  std::vector<long> embed_;         // spectral bin -> field bin
  std::vector<double> sign_;        // (-1)^{sum j}
  std::vector<double> table_;       // slot * (M+1) * n_rho + m * n_rho + i
};

// Projection onto Laguerre x Fourier modes; uses the field's own lattice.
SphericalSpectrum forward_transform(const RadialField& f, int M);
// Projection onto a coarser spectral lattice with the same box.
SphericalSpectrum forward_transform(const RadialField& f, int M, const LatticeGrid& spec);

RadialField inverse_transform(const SphericalSpectrum& S, const RadialGrid& rho, const LatticeGrid& field);
// Inversion onto the spectrum's lattice and its resolved radial grid.
RadialField inverse_transform(const SphericalSpectrum& S);

RadialGrid default_radial_grid(const SphericalSpectrum& S);
void check_resolution(const RadialGrid& rho, int M, int d, const LatticeGrid& spec);

double plancherel_norm(const SphericalSpectrum& S);
cplx plancherel_inner(const SphericalSpectrum& a, const SphericalSpectrum& b);

// L^r norm by quadrature on the (rho, s) grid; r = infinity gives the grid max.
double lr_norm(const RadialField& f, double r);

SphericalSpectrum convolve(const SphericalSpectrum& a, const SphericalSpectrum& b);

struct PhysPoint {
  double rho = 0;
  std::vector<double> s;
};

std::vector<cplx> evaluate_at(const SphericalSpectrum& S, const std::vector<PhysPoint>& pts);

}  // namespace htype
