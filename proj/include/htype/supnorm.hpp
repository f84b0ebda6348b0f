#pragma once

#include <functional>
#include <vector>

#include "htype/transform.hpp"

namespace htype {

struct SupOptions {
  int refine = 8;        // dense-scan subdivisions per coarse cell and axis
  int polish_rounds = 2; // coordinate sweeps of scan + Brent polish
};

struct SupResult {
  double value = 0;
  double coarse = 0;
  PhysPoint where;
};

// Local maximization of f by coordinate sweeps: a dense scan over +-1 cell
// followed by a Brent polish inside the best sub-cell. Coordinates stay >= lower.
double refine_max(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& x,
                  const std::vector<double>& cell, const std::vector<double>& lower, const SupOptions& opt);

// Sup over (rho, s) of the lattice function: coarse grid max (including the
// rho = 0 line), refined around the coarse argmax and around the origin.
SupResult lattice_sup(const SphericalSpectrum& S, const SupOptions& opt = {});

}  // namespace htype
