#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace htype {

using cplx = std::complex<double>;

struct HTypeGroup {
  int d = 0;
  int p = 0;
  // U[k] is the k-th 2d x 2d matrix, row-major.
  std::vector<std::vector<double>> U;

  int dim_h() const { return 2 * d; }
  int N() const { return 2 * d + 2 * p; }
  double u(int k, int row, int col) const { return U[k][row * 2 * d + col]; }
};

struct GroupPoint {
  std::vector<double> z;
  std::vector<double> eta;
};

// Smallest n (a power of two) carrying p anticommuting skew-orthogonal n x n matrices.
int clifford_module_dim(int p);

HTypeGroup build_group(int d, int p);

struct InvariantReport {
  double skew_err = 0;
  double orth_err = 0;
  double anticomm_err = 0;
  bool dims_ok = false;
  bool ok(double tol = 1e-12) const {
    return dims_ok && skew_err <= tol && orth_err <= tol && anticomm_err <= tol;
  }
};

InvariantReport check_invariants(const HTypeGroup& G);

// Sampled group-law identities on random points of [-2, 2]^{2d+p}; max-norm errors.
struct GroupLawReport {
  double assoc_err = 0;
  double inverse_err = 0;
  double dilation_err = 0;   // delta(ab) vs delta(a) delta(b)
  double bracket_err = 0;    // antisymmetry of the bracket
  double worst() const;
};

GroupLawReport check_group_law(const HTypeGroup& G, int samples = 1000, unsigned long long seed = 7);

double bracket(const HTypeGroup& G, int k, const std::vector<double>& z, const std::vector<double>& zp);
GroupPoint group_mul(const HTypeGroup& G, const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inv(const HTypeGroup& G, const GroupPoint& g);
GroupPoint dilate(const HTypeGroup& G, double lam, const GroupPoint& g);
GroupPoint identity_point(const HTypeGroup& G);

enum class FieldKind { X, Y, S };

struct VectorField {
  FieldKind kind;
  int index;  // 0-based: X_j, Y_j with j < d; S_i with i < p
};

// Function on R^{2d+p} with coordinates (z, eta), differentiated on a uniform
// lattice of spacing h inside the box [lo, hi].
struct SampledFunction {
  std::function<cplx(const GroupPoint&)> f;
  std::vector<double> lo;
  std::vector<double> hi;
  double h = 0;
};

cplx vector_field_apply(const HTypeGroup& G, VectorField which, const SampledFunction& F,
                        const GroupPoint& at);
cplx sublaplacian_fd(const HTypeGroup& G, const SampledFunction& F, const GroupPoint& at);

}  // namespace htype
