#include "htype/supnorm.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace htype {

double refine_max(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& x,
                  const std::vector<double>& cell, const std::vector<double>& lower, const SupOptions& opt) {
  double best = f(x);
  for (int round = 0; round < opt.polish_rounds; ++round) {
    for (size_t a = 0; a < x.size(); ++a) {
      double step = cell[a] / opt.refine;
      double x0 = x[a];
      double bx = x0;
      for (int k = -opt.refine; k <= opt.refine; ++k) {
        std::vector<double> y = x;
        y[a] = std::max(lower[a], x0 + k * step);
        double v = f(y);
        if (v > best) {
          best = v;
          bx = y[a];
        }
      }
      double lo = std::max(lower[a], bx - step), hi = bx + step;
      auto neg = [&](double t) {
        std::vector<double> y = x;
        y[a] = t;
        return -f(y);
      };
      std::uintmax_t iters = 60;
      auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 40, iters);
      if (-r.second > best) {
        best = -r.second;
        bx = r.first;
      }
      x[a] = bx;
    }
  }
  return best;
}

SupResult lattice_sup(const SphericalSpectrum& S, const SupOptions& opt) {
  RadialGrid rg = default_radial_grid(S);
  rg.rho.insert(rg.rho.begin(), 0.0);
  rg.w.insert(rg.w.begin(), 0.0);
  RadialField f = inverse_transform(S, rg, S.grid);
  long nb = S.grid.n_bins();
  double mx = -1;
  int bi = 0;
  long bk = 0;
  for (int i = 0; i < rg.size(); ++i)
    for (long k = 0; k < nb; ++k) {
      double v = std::abs(f.at(i, k));
      if (v > mx) {
        mx = v;
        bi = i;
        bk = k;
      }
    }
  SupResult res;
  res.coarse = mx;
  res.value = mx;
  int p = S.G.p;
  auto val = [&](const std::vector<double>& x) {
    PhysPoint pt{x[0], std::vector<double>(x.begin() + 1, x.end())};
    return std::abs(evaluate_at(S, {pt})[0]);
  };
  std::vector<double> cell(p + 1, S.grid.h()), lower(p + 1, -std::numeric_limits<double>::infinity());
  lower[0] = 0.0;
  auto rho_cell = [&](int i) {
    double c = 0;
    if (i > 0) c = std::max(c, rg.rho[i] - rg.rho[i - 1]);
    if (i + 1 < rg.size()) c = std::max(c, rg.rho[i + 1] - rg.rho[i]);
    return c;
  };
  std::vector<std::vector<double>> starts;
  std::vector<double> x0(p + 1);
  x0[0] = rg.rho[bi];
  auto s0 = lattice_point(S.grid, bk);
  std::copy(s0.begin(), s0.end(), x0.begin() + 1);
  starts.push_back(x0);
  starts.push_back(std::vector<double>(p + 1, 0.0));
  std::vector<int> start_rows{bi, 0};
  for (size_t c = 0; c < starts.size(); ++c) {
    std::vector<double> x = starts[c];
    cell[0] = rho_cell(start_rows[c]);
    double v = refine_max(val, x, cell, lower, opt);
    if (v > res.value) {
      res.value = v;
      res.where = PhysPoint{x[0], std::vector<double>(x.begin() + 1, x.end())};
    }
  }
  if (res.where.s.empty()) res.where = PhysPoint{x0[0], s0};
  return res;
}

}  // namespace htype
