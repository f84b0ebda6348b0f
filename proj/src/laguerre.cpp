#include "htype/laguerre.hpp"

#include <cmath>
#include <numbers>

#include "htype/errors.hpp"

namespace htype {

void laguerre_table(int M, double a, double tau, double* out) {
  double l0 = std::exp(-0.5 * tau);
  out[0] = l0;
  if (M == 0) return;
  out[1] = (1.0 + a - tau) * l0;
  for (int n = 1; n < M; ++n)
    out[n + 1] = ((2.0 * n + 1.0 + a - tau) * out[n] - (n + a) * out[n - 1]) / (n + 1.0);
}

double laguerre_fn(int m, double a, double tau) {
  if (m < 0) fail(Errc::NegativeArgument, "Laguerre index must be nonnegative");
  if (!(a > -1.0)) fail(Errc::NegativeArgument, "Laguerre parameter must exceed -1");
  if (!(tau >= 0.0)) fail(Errc::NegativeArgument, "Laguerre argument must be nonnegative");
  std::vector<double> buf(m + 1);
  laguerre_table(m, a, tau, buf.data());
  return buf[m];
}

double binom_weight(int m, int d) {
  double r = 1.0;
  for (int k = 1; k <= m; ++k) r = r * (k + d - 1) / k;
  return r;
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace htype
