#pragma once

#include <optional>
#include <vector>

#include "htype/exponents.hpp"
#include "htype/transform.hpp"

namespace htype {

// Evaluates mu |u|^{alpha-1} u on a zero-padded physical grid and projects back.
// The s-grid is refined by ceil((alpha+1)/2) so that odd-integer powers do not
// alias onto the retained frequencies; the radial grid is resolved for the
// enlarged Laguerre and frequency range.
class NonlinearityPlan {
 public:
  NonlinearityPlan(const HTypeGroup& G, int M, const LatticeGrid& grid, double alpha, bool allow_non_odd = false,
                   int M_out = -1, std::optional<LatticeGrid> out_grid = {});

  SphericalSpectrum apply(const SphericalSpectrum& S, cplx mu) const;
  // u on the padded grid
  RadialField field(const SphericalSpectrum& S) const;
  // mu |u|^{alpha-1} u pointwise
  RadialField pointwise(const RadialField& u, cplx mu) const;
  SphericalSpectrum project(const RadialField& f) const;

  double alpha() const { return alpha_; }
  int pad() const { return pad_; }
  const RadialGrid& rho() const { return inv_.rho(); }
  const LatticeGrid& field_grid() const { return inv_.field_grid(); }

 private:
  double alpha_;
  int pad_;
  SpectralTransform inv_, fwd_;
};

bool is_odd_integer(double alpha);

SphericalSpectrum nonlinearity(const SphericalSpectrum& S, double alpha, cplx mu);

struct NLSParams {
  double alpha = 3;
  cplx mu = 1.0;
  double s = 0;
  double T = 1;
  int n_t = 32;  // uniform steps on [0, T]
  AdmissiblePair pair;
  double s_star = 0;
  bool allow_non_odd = false;
  int jobs = 1;
};

struct PicardDiagnostics {
  std::vector<double> d_xs;     // ||u_{n+1} - u_n|| in X^s_T
  std::vector<double> d_x0;     // same in the weak metric X^0_T
  std::vector<double> ratio;    // d_xs[n] / d_xs[n-1]
  std::vector<double> ratio0;   // d_x0[n] / d_x0[n-1]
  std::vector<double> mass;     // mass drift of each iterate
  std::vector<double> norm_xs;  // ||u_{n+1}|| in X^s_T
  int iterations = 0;
  bool converged = false;

  // geometric mean of the ratios from the second iteration on, above round-off
  double contraction_factor() const;
};

struct SolverPath {
  std::vector<double> t;
  std::vector<SphericalSpectrum> states;
  PicardDiagnostics diag;

  double T() const { return t.empty() ? 0.0 : t.back(); }
};

std::vector<double> uniform_nodes(double T, int n_t);
SolverPath free_flight(const SphericalSpectrum& u0, const std::vector<double>& t);

// int_0^t e^{i(t-t')L} F(t') dt' by the trapezoid rule on e^{-it'L} F(t').
SphericalSpectrum duhamel(const SolverPath& F, double t);
// Same at every node of F.
std::vector<SphericalSpectrum> duhamel_all(const SolverPath& F);

// L^r norm used inside time norms: Plancherel for r = 2, physical-grid max for
// r = inf, grid quadrature otherwise.
double fast_lr_norm(const SphericalSpectrum& S, double r);

// max_t ||u||_{H^s} + ||(1+L)^{(s-s_*)/2} u||_{L^q_t L^r}, trapezoid in time.
double xst_norm(const SolverPath& path, double s, const AdmissiblePair& pair, double s_star);

SolverPath picard_solve(const SphericalSpectrum& u0, const NLSParams& params, int n_iter);

// ||u - Phi_{u0}[u]||_{X^s_T} / ||u||_{X^s_T}
double fixed_point_residual(const SolverPath& path, const SphericalSpectrum& u0, const NLSParams& params);

double mass_drift(const SolverPath& path);

// Strang splitting with exact nonlinear substeps (real mu); cross-check only.
SolverPath strang_reference(const SphericalSpectrum& u0, const NLSParams& params, int n_steps);

struct LeibnizExponents {
  double p, q, r;
};

// ||F(u)||_{W^{s,p}-dot} / (||u||_r^{alpha-1} ||u||_{W^{s,q}-dot}), F(u) = |u|^{alpha-1} u
struct RatioValue {
  double numerator = 0, denominator = 0;
  bool defined_zero = false;
  double ratio() const { return defined_zero ? 0.0 : numerator / denominator; }
};

RatioValue leibniz_ratio_probe(const SphericalSpectrum& S, double alpha, double s, const LeibnizExponents& e);

}  // namespace htype
