#pragma once

#include <vector>

namespace htype {

// l_m^{(a)}(tau) = L_m^{(a)}(tau) exp(-tau/2).
double laguerre_fn(int m, double a, double tau);

// Fills out[0..M] with l_0^{(a)}(tau) .. l_M^{(a)}(tau).
void laguerre_table(int M, double a, double tau, double* out);

// binom(m+d-1, m), the multiplicity weight of the m-th Laguerre mode.
double binom_weight(int m, int d);

// Surface measure of the unit sphere in R^n.
double sphere_area(int n);

}  // namespace htype
