#include "htype/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "htype/errors.hpp"

namespace htype {

namespace {

// 2x2 real factors: 0 = I, 1 = J (skew, J^2 = -I), 2 = sigma_x, 3 = sigma_z.
const double kFactor[4][4] = {
    {1, 0, 0, 1},
    {0, 1, -1, 0},
    {0, 1, 1, 0},
    {1, 0, 0, -1},
};

using Word = std::vector<int>;

bool factors_anticommute(int a, int b) { return a != 0 && b != 0 && a != b; }

bool words_anticommute(const Word& a, const Word& b) {
  int n = 0;
  for (size_t i = 0; i < a.size(); ++i) n += factors_anticommute(a[i], b[i]);
  return n % 2 == 1;
}

bool is_skew(const Word& w) { return std::count(w.begin(), w.end(), 1) % 2 == 1; }

bool search(const std::vector<Word>& cands, size_t from, int need, std::vector<Word>& chosen) {
  if (need == 0) return true;
  for (size_t i = from; i < cands.size(); ++i) {
    bool ok = true;
    for (const auto& c : chosen)
      if (!words_anticommute(c, cands[i])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(cands[i]);
    if (search(cands, i + 1, need - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

std::vector<Word> skew_words(int k) {
  std::vector<Word> out;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    Word w(k);
    int c = code;
    for (int i = k - 1; i >= 0; --i) {
      w[i] = c % 4;
      c /= 4;
    }
    if (is_skew(w)) out.push_back(w);
  }
  return out;
}

std::vector<Word> clifford_words(int p, int& k_out) {
  for (int k = 1; k <= 5; ++k) {
    std::vector<Word> chosen;
    if (search(skew_words(k), 0, p, chosen)) {
      k_out = k;
      return chosen;
    }
  }
  k_out = -1;
  return {};
}

std::vector<double> kron_word(const Word& w) {
  std::vector<double> m{1.0};
  int n = 1;
  for (int f : w) {
    std::vector<double> next(4 * n * n);
    int n2 = 2 * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            next[(2 * i + a) * n2 + (2 * j + b)] = m[i * n + j] * kFactor[f][2 * a + b];
    m.swap(next);
    n = n2;
  }
  return m;
}

void check_dims(const HTypeGroup& G, const GroupPoint& g) {
  if ((int)g.z.size() != G.dim_h() || (int)g.eta.size() != G.p)
    fail(Errc::DimensionMismatch, "point has (" + std::to_string(g.z.size()) + "," +
                                      std::to_string(g.eta.size()) + ") components, group needs (" +
                                      std::to_string(G.dim_h()) + "," + std::to_string(G.p) + ")");
}

}  // namespace

int clifford_module_dim(int p) {
  if (p < 1) return -1;
  int k = -1;
  clifford_words(p, k);
  return k < 0 ? -1 : (1 << k);
}

HTypeGroup build_group(int d, int p) {
  if (d < 1 || p < 1) fail(Errc::DimensionConstraint, "d and p must be positive");
  if (p + 1 > 2 * d)
    fail(Errc::DimensionConstraint,
         "p+1 <= 2d violated for d=" + std::to_string(d) + ", p=" + std::to_string(p));
  int k = -1;
  auto words = clifford_words(p, k);
  if (k < 0) fail(Errc::NoCliffordModule, "no Clifford module found for p=" + std::to_string(p));
  int n = 1 << k;
  if ((2 * d) % n != 0)
    fail(Errc::NoCliffordModule, "2d=" + std::to_string(2 * d) + " is not a multiple of the module dimension " +
                                     std::to_string(n) + " for p=" + std::to_string(p));
  HTypeGroup G;
  G.d = d;
  G.p = p;
  int dim = 2 * d;
  for (const auto& w : words) {
    auto block = kron_word(w);
    std::vector<double> m(dim * dim, 0.0);
    for (int b = 0; b < dim / n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[(b * n + i) * dim + b * n + j] = block[i * n + j];
    G.U.push_back(std::move(m));
  }
  return G;
}

InvariantReport check_invariants(const HTypeGroup& G) {
  InvariantReport r;
  int n = G.dim_h();
  r.dims_ok = (int)G.U.size() == G.p && G.p + 1 <= n;
  for (const auto& m : G.U)
    if ((int)m.size() != n * n) r.dims_ok = false;
  if (!r.dims_ok) return r;
  for (int k = 0; k < G.p; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        r.skew_err = std::max(r.skew_err, std::abs(G.u(k, i, j) + G.u(k, j, i)));
        double s = 0;
        for (int l = 0; l < n; ++l) s += G.u(k, l, i) * G.u(k, l, j);
        r.orth_err = std::max(r.orth_err, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    for (int k2 = k + 1; k2 < G.p; ++k2)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int l = 0; l < n; ++l) s += G.u(k, i, l) * G.u(k2, l, j) + G.u(k2, i, l) * G.u(k, l, j);
          r.anticomm_err = std::max(r.anticomm_err, std::abs(s));
        }
  }
  return r;
}

double bracket(const HTypeGroup& G, int k, const std::vector<double>& z, const std::vector<double>& zp) {
  int n = G.dim_h();
  double s = 0;
  for (int i = 0; i < n; ++i) {
    double row = 0;
    for (int j = 0; j < n; ++j) row += G.u(k, i, j) * zp[j];
    s += z[i] * row;
  }
  return s;
}

GroupPoint group_mul(const HTypeGroup& G, const GroupPoint& a, const GroupPoint& b) {
  check_dims(G, a);
  check_dims(G, b);
  GroupPoint c;
  c.z.resize(G.dim_h());
  c.eta.resize(G.p);
  for (int i = 0; i < G.dim_h(); ++i) c.z[i] = a.z[i] + b.z[i];
  for (int k = 0; k < G.p; ++k) c.eta[k] = a.eta[k] + b.eta[k] + 0.5 * bracket(G, k, a.z, b.z);
  return c;
}

GroupPoint group_inv(const HTypeGroup& G, const GroupPoint& g) {
  check_dims(G, g);
  GroupPoint r = g;
  for (auto& v : r.z) v = -v;
  for (auto& v : r.eta) v = -v;
  return r;
}

GroupPoint dilate(const HTypeGroup& G, double lam, const GroupPoint& g) {
  check_dims(G, g);
  if (!(lam > 0)) fail(Errc::NonpositiveScale, "dilation factor must be positive");
  GroupPoint r = g;
  for (auto& v : r.z) v *= lam;
  for (auto& v : r.eta) v *= lam * lam;
  return r;
}

GroupPoint identity_point(const HTypeGroup& G) {
  return GroupPoint{std::vector<double>(G.dim_h(), 0.0), std::vector<double>(G.p, 0.0)};
}

namespace {

using Fn = std::function<cplx(const GroupPoint&)>;

double& coord(GroupPoint& g, int axis, int dimh) { return axis < dimh ? g.z[axis] : g.eta[axis - dimh]; }

void check_stencil(const SampledFunction& F, const GroupPoint& at, int dimh, int reach) {
  int naxes = dimh + (int)at.eta.size();
  if ((int)F.lo.size() != naxes || (int)F.hi.size() != naxes)
    fail(Errc::DimensionMismatch, "grid box has wrong dimension");
  if (!(F.h > 0)) fail(Errc::GridTooCoarse, "grid spacing must be positive");
  double slack = 1e-12 * (1.0 + F.h);
  for (int a = 0; a < naxes; ++a) {
    double x = a < dimh ? at.z[a] : at.eta[a - dimh];
    if (x - reach * F.h < F.lo[a] - slack || x + reach * F.h > F.hi[a] + slack)
      fail(Errc::GridTooCoarse, "stencil leaves the grid box along axis " + std::to_string(a));
  }
}

cplx apply_field(const HTypeGroup& G, VectorField w, const Fn& f, double h, const GroupPoint& at) {
  int dimh = G.dim_h();
  int col = w.kind == FieldKind::X ? w.index : w.kind == FieldKind::Y ? w.index + G.d : -1;
  auto central = [&](int axis) {
    GroupPoint a = at, b = at;
    coord(a, axis, dimh) += h;
    coord(b, axis, dimh) -= h;
    return (f(a) - f(b)) / (2.0 * h);
  };
  if (w.kind == FieldKind::S) return central(dimh + w.index);
  cplx out = central(col);
  for (int k = 0; k < G.p; ++k) {
    double c = 0;
    for (int l = 0; l < dimh; ++l) c += at.z[l] * G.u(k, l, col);
    c *= 0.5;
    if (c != 0.0) out += c * central(dimh + k);
  }
  return out;
}

void check_field(const HTypeGroup& G, VectorField w) {
  int lim = w.kind == FieldKind::S ? G.p : G.d;
  if (w.index < 0 || w.index >= lim) fail(Errc::DimensionMismatch, "vector field index out of range");
}

}  // namespace

cplx vector_field_apply(const HTypeGroup& G, VectorField which, const SampledFunction& F, const GroupPoint& at) {
  check_dims(G, at);
  check_field(G, which);
  check_stencil(F, at, G.dim_h(), 1);
  return apply_field(G, which, F.f, F.h, at);
}

cplx sublaplacian_fd(const HTypeGroup& G, const SampledFunction& F, const GroupPoint& at) {
  check_dims(G, at);
  check_stencil(F, at, G.dim_h(), 2);
  cplx acc = 0;
  for (FieldKind kind : {FieldKind::X, FieldKind::Y})
    for (int j = 0; j < G.d; ++j) {
      VectorField w{kind, j};
      Fn inner = [&](const GroupPoint& g) { return apply_field(G, w, F.f, F.h, g); };
      acc += apply_field(G, w, inner, F.h, at);
    }
  return -acc;
}

double GroupLawReport::worst() const { return std::max({assoc_err, inverse_err, dilation_err, bracket_err}); }

GroupLawReport check_group_law(const HTypeGroup& G, int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto random_point = [&] {
    GroupPoint g = identity_point(G);
    for (auto& v : g.z) v = u(rng);
    for (auto& v : g.eta) v = u(rng);
    return g;
  };
  auto dist = [](const GroupPoint& a, const GroupPoint& b) {
    double m = 0;
    for (size_t i = 0; i < a.z.size(); ++i) m = std::max(m, std::abs(a.z[i] - b.z[i]));
    for (size_t i = 0; i < a.eta.size(); ++i) m = std::max(m, std::abs(a.eta[i] - b.eta[i]));
    return m;
  };
  GroupLawReport r;
  for (int k = 0; k < samples; ++k) {
    GroupPoint a = random_point(), b = random_point(), c = random_point();
    r.assoc_err = std::max(r.assoc_err, dist(group_mul(G, group_mul(G, a, b), c), group_mul(G, a, group_mul(G, b, c))));
    r.inverse_err = std::max(r.inverse_err, dist(group_mul(G, group_inv(G, a), a), identity_point(G)));
    double lam = 0.3 + 2.0 * (k % 7) / 7.0;
    r.dilation_err = std::max(
        r.dilation_err, dist(dilate(G, lam, group_mul(G, a, b)), group_mul(G, dilate(G, lam, a), dilate(G, lam, b))));
    for (int j = 0; j < G.p; ++j)
      r.bracket_err = std::max(r.bracket_err, std::abs(bracket(G, j, a.z, b.z) + bracket(G, j, b.z, a.z)));
  }
  return r;
}

}  // namespace htype
