#include "htype/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "htype/errors.hpp"
#include "htype/laguerre.hpp"

namespace htype {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Batched p-dimensional FFTs over n_rho columns, with independent strides.
void batched_fft(const LatticeGrid& g, int howmany, cplx* in, int istride, int idist, cplx* out, int ostride,
                 int odist, int sign) {
  std::vector<int> n(g.p, g.n_s);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_many_dft(g.p, n.data(), howmany, reinterpret_cast<fftw_complex*>(in), nullptr, istride,
                              idist, reinterpret_cast<fftw_complex*>(out), nullptr, ostride, odist, sign,
                              FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

double parity_sign(const LatticeGrid& g, long b) {
  int s = 0;
  for (int a = 0; a < g.p; ++a) s += g.freq_index(b, a);
  return (s % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

SpectralTransform::SpectralTransform(const HTypeGroup& G, int M, const LatticeGrid& spec, const RadialGrid& rho,
                                     const LatticeGrid& field)
    : G_(G), M_(M), spec_(spec), field_(field), rho_(rho) {
  if (spec.p != G.p || field.p != G.p) fail(Errc::DimensionMismatch, "lattice dimension differs from p");
  if (spec.L != field.L || field.n_s < spec.n_s)
    fail(Errc::GridMismatch, "field lattice must share the box and be at least as fine");
  if (M < 0) fail(Errc::CutoffTooLarge, "Laguerre cutoff must be nonnegative");
  long nb = spec.n_bins();
  bin_key_slot_.assign(nb, -1);
  embed_.resize(nb);
  sign_.resize(nb);
  std::map<long, long> slots;
  for (long b = 0; b < nb; ++b) {
    embed_[b] = spec.embed(b, field.n_s);
    sign_[b] = parity_sign(spec, b);
    long k = spec.key(b);
    if (k == 0) continue;
    auto it = slots.find(k);
    if (it == slots.end()) it = slots.emplace(k, (long)slots.size()).first;
    bin_key_slot_[b] = it->second;
  }
  int nr = rho.size();
  table_.assign(slots.size() * (size_t)(M + 1) * nr, 0.0);
  std::vector<double> buf(M + 1);
  double a = G.d - 1.0;
  for (const auto& [k, slot] : slots) {
    double lam = spec.dlam() * std::sqrt((double)k);
    double* t = &table_[(size_t)slot * (M + 1) * nr];
    for (int i = 0; i < nr; ++i) {
      laguerre_table(M, a, 0.5 * lam * rho.rho[i] * rho.rho[i], buf.data());
      for (int m = 0; m <= M; ++m) t[(size_t)m * nr + i] = buf[m];
    }
  }
}

SphericalSpectrum SpectralTransform::forward(const RadialField& f) const {
  if (!(f.grid == field_) || f.rho.size() != rho_.size())
    fail(Errc::GridMismatch, "field does not match the transform's grids");
  int nr = rho_.size();
  long nbf = field_.n_bins();
  std::vector<cplx> in(f.v);
  std::vector<cplx> gb((size_t)nbf * nr);
  batched_fft(field_, nr, in.data(), 1, (int)nbf, gb.data(), nr, 1, FFTW_BACKWARD);
  int d = G_.d;
  double omega = sphere_area(2 * d);
  std::vector<double> wr(nr);
  for (int i = 0; i < nr; ++i) wr[i] = omega * rho_.w[i] * std::pow(rho_.rho[i], 2 * d - 1);
  double hp = std::pow(field_.h(), field_.p);
  SphericalSpectrum S = zero_spectrum(G_, M_, spec_);
  long nb = spec_.n_bins();
  std::vector<double> inv_binom(M_ + 1);
  for (int m = 0; m <= M_; ++m) inv_binom[m] = 1.0 / binom_weight(m, d);
  std::vector<cplx> col(nr);
  for (long b = 0; b < nb; ++b) {
    long slot = bin_key_slot_[b];
    if (slot < 0) continue;
    const cplx* g = &gb[(size_t)embed_[b] * nr];
    double fac = hp * sign_[b];
    for (int i = 0; i < nr; ++i) col[i] = g[i] * wr[i];
    const double* t = &table_[(size_t)slot * (M_ + 1) * nr];
    for (int m = 0; m <= M_; ++m) {
      const double* tm = t + (size_t)m * nr;
      double re = 0, im = 0;
      for (int i = 0; i < nr; ++i) {
        re += tm[i] * col[i].real();
        im += tm[i] * col[i].imag();
      }
      S.at(m, b) = cplx(re, im) * (fac * inv_binom[m]);
    }
  }
  return S;
}

RadialField SpectralTransform::inverse(const SphericalSpectrum& S) const {
  if (!(S.grid == spec_) || S.M != M_ || S.G.d != G_.d) fail(Errc::GridMismatch, "spectrum does not match transform");
  int nr = rho_.size();
  long nbf = field_.n_bins();
  long nb = spec_.n_bins();
  int d = G_.d;
  double pref = inversion_constant(d, G_.p) * std::pow(spec_.dlam(), spec_.p);
  std::vector<cplx> gb((size_t)nbf * nr, cplx(0));
  for (long b = 0; b < nb; ++b) {
    long slot = bin_key_slot_[b];
    if (slot < 0) continue;
    double lam = spec_.lam_abs(b);
    double fac = pref * std::pow(lam, d) * sign_[b];
    cplx* g = &gb[(size_t)embed_[b] * nr];
    const double* t = &table_[(size_t)slot * (M_ + 1) * nr];
    for (int m = 0; m <= M_; ++m) {
      cplx c = S.at(m, b) * fac;
      if (c == cplx(0)) continue;
      const double* tm = t + (size_t)m * nr;
      for (int i = 0; i < nr; ++i) g[i] += c * tm[i];
    }
  }
  RadialField f;
  f.G = G_;
  f.rho = rho_;
  f.grid = field_;
  f.v.assign((size_t)nr * nbf, cplx(0));
  batched_fft(field_, nr, gb.data(), nr, 1, f.v.data(), 1, (int)nbf, FFTW_FORWARD);
  return f;
}

void check_resolution(const RadialGrid& rho, int M, int d, const LatticeGrid& spec) {
  std::string why = resolution_problem(rho, M, d, spec.lam_min(), spec.lam_max());
  if (!why.empty()) fail(Errc::ResolutionInsufficient, why);
}

SphericalSpectrum forward_transform(const RadialField& f, int M) { return forward_transform(f, M, f.grid); }

SphericalSpectrum forward_transform(const RadialField& f, int M, const LatticeGrid& spec) {
  if (M < 0) fail(Errc::CutoffTooLarge, "Laguerre cutoff must be nonnegative");
  if (M + 1 > f.rho.size())
    fail(Errc::CutoffTooLarge, "cutoff M=" + std::to_string(M) + " exceeds the radial node count");
  check_resolution(f.rho, M, f.G.d, spec);
  SpectralTransform T(f.G, M, spec, f.rho, f.grid);
  return T.forward(f);
}

RadialField inverse_transform(const SphericalSpectrum& S, const RadialGrid& rho, const LatticeGrid& field) {
  SpectralTransform T(S.G, S.M, S.grid, rho, field);
  return T.inverse(S);
}

RadialGrid default_radial_grid(const SphericalSpectrum& S) {
  return resolved_radial_grid(S.M, S.G.d, S.grid.lam_min(), S.grid.lam_max());
}

RadialField inverse_transform(const SphericalSpectrum& S) {
  return inverse_transform(S, default_radial_grid(S), S.grid);
}

cplx plancherel_inner(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  check_same_grid(a, b);
  int d = a.G.d;
  auto lam = a.grid.lam_abs_table();
  std::vector<double> wl(lam.size());
  for (size_t k = 0; k < lam.size(); ++k) wl[k] = std::pow(lam[k], d);
  cplx acc = 0;
  long nb = a.n_bins();
  for (int m = 0; m <= a.M; ++m) {
    cplx row = 0;
    for (long k = 0; k < nb; ++k) row += a.at(m, k) * std::conj(b.at(m, k)) * wl[k];
    acc += binom_weight(m, d) * row;
  }
  return acc * inversion_constant(d, a.G.p) * std::pow(a.grid.dlam(), a.grid.p);
}

double plancherel_norm(const SphericalSpectrum& S) { return std::sqrt(std::max(0.0, plancherel_inner(S, S).real())); }

double lr_norm(const RadialField& f, double r) {
  long nb = f.grid.n_bins();
  int nr = f.rho.size();
  if (std::isinf(r)) {
    double mx = 0;
    for (const auto& v : f.v) mx = std::max(mx, std::abs(v));
    return mx;
  }
  int d = f.G.d;
  double omega = sphere_area(2 * d);
  double hp = std::pow(f.grid.h(), f.grid.p);
  double acc = 0;
  for (int i = 0; i < nr; ++i) {
    double row = 0;
    const cplx* v = &f.v[(size_t)i * nb];
    if (r == 2.0)
      for (long k = 0; k < nb; ++k) row += std::norm(v[k]);
    else
      for (long k = 0; k < nb; ++k) row += std::pow(std::abs(v[k]), r);
    acc += f.rho.w[i] * std::pow(f.rho.rho[i], 2 * d - 1) * row;
  }
  return std::pow(omega * hp * acc, 1.0 / r);
}

SphericalSpectrum convolve(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  check_same_grid(a, b);
  SphericalSpectrum r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] *= b.c[i];
  return r;
}

std::vector<cplx> evaluate_at(const SphericalSpectrum& S, const std::vector<PhysPoint>& pts) {
  const LatticeGrid& g = S.grid;
  long nb = g.n_bins();
  int d = S.G.d;
  int M = S.M;
  std::map<long, long> slots;
  std::vector<long> slot_of(nb, -1);
  std::vector<double> lam_of_slot;
  for (long b = 0; b < nb; ++b) {
    long k = g.key(b);
    if (k == 0) continue;
    auto it = slots.find(k);
    if (it == slots.end()) {
      it = slots.emplace(k, (long)lam_of_slot.size()).first;
      lam_of_slot.push_back(g.dlam() * std::sqrt((double)k));
    }
    slot_of[b] = it->second;
  }
  std::vector<double> wl(nb, 0.0);
  for (long b = 0; b < nb; ++b)
    if (slot_of[b] >= 0) wl[b] = std::pow(lam_of_slot[slot_of[b]], d);
  double pref = inversion_constant(d, g.p) * std::pow(g.dlam(), g.p);
  std::vector<double> lag(lam_of_slot.size() * (M + 1));
  std::vector<cplx> amp(nb);
  std::vector<std::vector<cplx>> phase(g.p, std::vector<cplx>(g.n_s));
  std::vector<cplx> out(pts.size());
  for (size_t q = 0; q < pts.size(); ++q) {
    const PhysPoint& pt = pts[q];
    if ((int)pt.s.size() != g.p) fail(Errc::DimensionMismatch, "evaluation point has wrong center dimension");
    for (size_t sl = 0; sl < lam_of_slot.size(); ++sl)
      laguerre_table(M, d - 1.0, 0.5 * lam_of_slot[sl] * pt.rho * pt.rho, &lag[sl * (M + 1)]);
    for (int a = 0; a < g.p; ++a)
      for (int i = 0; i < g.n_s; ++i) {
        int j = i < g.n_s / 2 ? i : i - g.n_s;
        phase[a][i] = std::polar(1.0, -g.dlam() * j * pt.s[a]);
      }
    std::fill(amp.begin(), amp.end(), cplx(0));
    for (int m = 0; m <= M; ++m)
      for (long b = 0; b < nb; ++b) {
        long sl = slot_of[b];
        if (sl < 0) continue;
        amp[b] += S.at(m, b) * lag[sl * (M + 1) + m];
      }
    cplx acc = 0;
    for (long b = 0; b < nb; ++b) {
      if (slot_of[b] < 0) continue;
      cplx ph = 1.0;
      long bb = b;
      for (int a = g.p - 1; a >= 0; --a) {
        ph *= phase[a][bb % g.n_s];
        bb /= g.n_s;
      }
      acc += ph * amp[b] * wl[b];
    }
    out[q] = pref * acc;
  }
  return out;
}

}  // namespace htype
