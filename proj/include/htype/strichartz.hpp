#pragma once

#include <vector>

#include "htype/exponents.hpp"
#include "htype/multiplier_kernel.hpp"
#include "htype/nls.hpp"
#include "htype/supnorm.hpp"

namespace htype {

struct StrichartzOptions {
  int panels = 6;        // dyadic panels [T/2^{k+1}, T/2^k] plus [0, T/2^panels]
  int nodes = 16;        // Gauss-Legendre nodes per panel
  SupOptions sup;
  int jobs = 1;
};

struct StrichartzCurve {
  std::vector<double> T;         // T/2^panels, ..., T/2, T
  std::vector<double> quotient;  // truncated quotient at each T
  double sigma = 0;
  double value() const { return quotient.back(); }
  // |Q(T) - Q(T/2)| / Q(T)
  double last_doubling_change() const;
};

// Space-time nodes and weights on [0, T] used by the quotients.
QuadRule strichartz_time_rule(double T, const StrichartzOptions& opt);

// ||e^{itL}u0||_{L^q([-T,T]; L^r)} / ||u0||_{H^sigma-dot}, sigma = N(1/2 - 1/r) - 2/q,
// for a continuum kernel with real multiplier (r = 2 or inf).
StrichartzCurve strichartz_quotient(const MultiplierKernel& u0, const AdmissiblePair& pair, double T,
                                    const StrichartzOptions& opt = {});

// Same on the periodic lattice; T must stay inside the aliasing window.
StrichartzCurve strichartz_quotient(const SphericalSpectrum& S0, const AdmissiblePair& pair, double T,
                                    const StrichartzOptions& opt = {});

// ||int_0^t e^{i(t-t')L} F dt'||_{L^{q1} L^{r1}} / ||F||_{L^{q2'} W^{sigma1+sigma2, r2'}-dot} on the path nodes.
RatioValue duhamel_quotient(const SolverPath& F, const AdmissiblePair& pair1, const AdmissiblePair& pair2);

}  // namespace htype
