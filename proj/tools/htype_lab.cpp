// Batch experiment driver. Every artifact lands in --out (or $HTYPE_LAB_OUT) and
// carries the hash of the effective configuration.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical-resolution error,
// 4 a built-in check failed.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "htype/dispersive.hpp"
#include "htype/errors.hpp"
#include "htype/exponents.hpp"
#include "htype/io.hpp"
#include "htype/nls.hpp"
#include "htype/parallel.hpp"
#include "htype/probes.hpp"
#include "htype/strichartz.hpp"
#include "htype/transform.hpp"

using namespace htype;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "htype-lab 1.0";

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out = "out";
  std::string config;
  int jobs = 1;
  std::uint64_t seed = 1;
};

class Artifacts {
 public:
  Artifacts(const std::string& command, json cfg, const std::string& out) : command_(command), cfg_(std::move(cfg)) {
    const char* env = std::getenv("HTYPE_LAB_OUT");
    dir_ = env && *env ? fs::path(env) : fs::path(out);
    fs::create_directories(dir_);
    hash_ = hash_hex(config_hash(json{{"command", command_}, {"config", cfg_}}));
  }

  const std::string& hash() const { return hash_; }

  json envelope(json body, json tolerances = json::object()) const {
    body["command"] = command_;
    body["config"] = cfg_;
    body["config_hash"] = hash_;
    body["version"] = kVersion;
    body["tolerances"] = std::move(tolerances);
    return body;
  }

  void json_file(const std::string& name, const json& j) const { write_text((dir_ / name).string(), j.dump(2) + "\n"); }
  void csv_file(const std::string& name, const std::string& csv) const {
    write_text((dir_ / name).string(), "# config_hash=" + hash_ + "\n" + csv);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::string command_;
  json cfg_;
  fs::path dir_;
  std::string hash_;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory ($HTYPE_LAB_OUT overrides)");
  sub->add_option("--config", c.config, "JSON file whose keys mirror the flags");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "RNG seed");
}

// {"group": {"d": 2}, "mu": [1, 0]} -> d = 2, mu_re = 1, mu_im = 0
void flatten(const json& j, std::map<std::string, json>& flat) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) {
      flatten(it.value(), flat);
    } else if (it.key() == "mu" && it.value().is_array() && it.value().size() == 2) {
      flat["mu_re"] = it.value()[0];
      flat["mu_im"] = it.value()[1];
    } else {
      flat[it.key()] = it.value();
    }
  }
}

std::string scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  fail(Errc::ConfigInvalid, "config key '" + key + "' must be a scalar or a list of scalars");
}

void apply_config(CLI::App* sub, const std::string& file) {
  if (file.empty()) return;
  json j;
  try {
    j = json::parse(read_text(file));
  } catch (const json::exception& e) {
    fail(Errc::ConfigInvalid, "config file " + file + ": " + e.what());
  } catch (const Error& e) {
    fail(Errc::ConfigInvalid, e.what());
  }
  if (!j.is_object()) fail(Errc::ConfigInvalid, "config file must hold a JSON object");
  std::map<std::string, json> flat;
  flatten(j, flat);
  for (const auto& [key, value] : flat) {
    if (key == "config" || key == "out") fail(Errc::ConfigInvalid, "config key '" + key + "' is not allowed in a file");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) fail(Errc::ConfigInvalid, "unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      if (value.is_array()) {
        std::vector<std::string> items;
        for (const auto& v : value) items.push_back(scalar_text(v, key));
        opt->add_result(items);
      } else {
        opt->add_result(scalar_text(value, key));
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      fail(Errc::ConfigInvalid, "config key '" + key + "': " + e.what());
    }
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

SphericalSpectrum random_full_spectrum(const HTypeGroup& G, int M, const LatticeGrid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  SphericalSpectrum S = zero_spectrum(G, M, grid);
  for (int m = 0; m <= M; ++m)
    for (long b = 0; b < S.n_bins(); ++b)
      if (grid.key(b) != 0) S.at(m, b) = cplx(n(rng), n(rng));
  return S;
}

double rel_l2(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  double num = 0, den = 0;
  for (size_t i = 0; i < a.c.size(); ++i) {
    num += std::norm(a.c[i] - b.c[i]);
    den += std::norm(b.c[i]);
  }
  return std::sqrt(num / den);
}

// ---------------------------------------------------------------------------

struct GroupCheck {
  int d = 2, p = 3, samples = 1000;
  void setup(CLI::App* s) {
    s->add_option("--d", d, "Half horizontal dimension");
    s->add_option("--p", p, "Center dimension");
    s->add_option("--samples", samples, "Random triples for the group-law identities");
  }
  json cfg() const { return {{"d", d}, {"p", p}, {"samples", samples}}; }
  void run(const Artifacts& a, const Common& c) const {
    HTypeGroup G = build_group(d, p);
    InvariantReport inv = check_invariants(G);
    GroupLawReport law = check_group_law(G, samples, c.seed);
    bool ok = inv.ok(1e-12) && law.worst() <= 1e-12;
    json body = {{"group", group_json(G)},
                 {"N", G.N()},
                 {"invariants",
                  {{"skew_err", inv.skew_err}, {"orth_err", inv.orth_err}, {"anticomm_err", inv.anticomm_err},
                   {"dims_ok", inv.dims_ok}}},
                 {"group_law",
                  {{"assoc_err", law.assoc_err}, {"inverse_err", law.inverse_err}, {"dilation_err", law.dilation_err},
                   {"bracket_err", law.bracket_err}}},
                 {"pass", ok}};
    a.json_file("group_check.json", a.envelope(body, {{"invariants", 1e-12}, {"group_law", 1e-12}}));
    std::cout << body.dump(2) << "\n";
    require(ok, "group invariants violated");
  }
};

struct TransformRoundtrip {
  int d = 1, p = 1, M = 32, n_s = 64, trials = 20;
  double L = 32;
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--M", M, "Largest Laguerre index");
    s->add_option("--L", L, "Center box length");
    s->add_option("--n_s", n_s, "Center samples per axis");
    s->add_option("--trials", trials);
  }
  json cfg() const { return {{"d", d}, {"p", p}, {"M", M}, {"L", L}, {"n_s", n_s}, {"trials", trials}}; }
  void run(const Artifacts& a, const Common& c) const {
    HTypeGroup G = build_group(d, p);
    LatticeGrid grid = make_lattice(p, L, n_s);
    std::mt19937_64 rng(c.seed);
    std::vector<SphericalSpectrum> data;
    for (int i = 0; i < trials; ++i) data.push_back(random_full_spectrum(G, M, grid, rng));
    std::vector<double> rt(trials), pl(trials);
    SpectralTransform T(G, M, grid, default_radial_grid(data[0]), grid);
    parallel_for(trials, c.jobs, [&](int i) {
      RadialField f = T.inverse(data[i]);
      rt[i] = rel_l2(T.forward(f), data[i]);
      pl[i] = std::abs(lr_norm(f, 2.0) / plancherel_norm(data[i]) - 1.0);
    });
    double worst_rt = *std::max_element(rt.begin(), rt.end()), worst_pl = *std::max_element(pl.begin(), pl.end());
    bool ok = worst_rt <= 1e-6 && worst_pl <= 1e-4;
    std::ostringstream csv;
    csv << std::setprecision(17) << "trial,roundtrip_rel_l2,plancherel_rel_diff\n";
    for (int i = 0; i < trials; ++i) csv << i << ',' << rt[i] << ',' << pl[i] << '\n';
    json body = {{"worst_roundtrip", worst_rt}, {"worst_plancherel", worst_pl}, {"pass", ok}};
    a.csv_file("transform_roundtrip.csv", csv.str());
    a.json_file("transform_roundtrip.json", a.envelope(body, {{"roundtrip", 1e-6}, {"plancherel", 1e-4}}));
    std::cout << body.dump(2) << "\n";
    require(ok, "transform round trip above tolerance");
  }
};

struct DispersiveFit {
  int d = 2, p = 2, M = 4, samples = 21, n_s = 64;
  double t_min = 1, t_max = 100, L = 64, tol = -1;
  std::string backend = "continuum";
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--M", M);
    s->add_option("--t_min", t_min, "Fit window start");
    s->add_option("--t_max", t_max, "Fit window end");
    s->add_option("--samples", samples, "Log-spaced times in the window");
    s->add_option("--backend", backend, "continuum or lattice")->check(CLI::IsMember({"continuum", "lattice"}));
    s->add_option("--L", L, "Lattice backend box");
    s->add_option("--n_s", n_s, "Lattice backend samples per axis");
    s->add_option("--tol", tol, "If >= 0, exit 4 unless |exponent - (p-1)/2| <= tol");
  }
  json cfg() const {
    return {{"d", d},         {"p", p},       {"M", M}, {"t_min", t_min}, {"t_max", t_max}, {"samples", samples},
            {"backend", backend}, {"L", L}, {"n_s", n_s}, {"tol", tol}};
  }
  void run(const Artifacts& a, const Common& c) const {
    HTypeGroup G = build_group(d, p);
    LPProfile P;
    DecaySampling ds;
    ds.backend = backend == "lattice" ? DecayBackend::Lattice : DecayBackend::Continuum;
    ds.M = M;
    ds.t_min = t_min;
    ds.t_max = t_max;
    ds.jobs = c.jobs;
    if (ds.backend == DecayBackend::Lattice) ds.grid = make_lattice(p, L, n_s);
    DecayFit fit = kernel_decay(G, P, log_spaced(t_min, t_max, samples), ds);
    double expected = 0.5 * (p - 1);
    json body = decay_fit_json(fit);
    body["expected_exponent"] = expected;
    a.csv_file("dispersive_fit.csv", decay_csv(fit, fit.sup_norms.front() * std::pow(t_min, expected), expected));
    a.json_file("dispersive_fit.json", a.envelope(body, {{"exponent", tol}}));
    std::cout << "fitted exponent " << fit.fitted_exponent << " (expected " << expected << "), r^2 " << fit.r_squared
              << "\n";
    if (tol >= 0) require(std::abs(fit.fitted_exponent - expected) <= tol, "decay exponent outside tolerance");
  }
};

struct ScalingCheck {
  int d = 2, p = 2, M = 4, n_s = 32;
  double L = 32;
  std::vector<int> js{-2, -1, 0, 1, 2};
  std::vector<double> ts{0.25, 1.0, 4.0};
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--M", M);
    s->add_option("--L", L, "Box at j = 0; the check for j uses L / 4^j");
    s->add_option("--n_s", n_s);
    s->add_option("--j", js, "Dyadic indices");
    s->add_option("--t", ts, "Times");
  }
  json cfg() const { return {{"d", d}, {"p", p}, {"M", M}, {"L", L}, {"n_s", n_s}, {"j", js}, {"t", ts}}; }
  void run(const Artifacts& a, const Common& c) const {
    HTypeGroup G = build_group(d, p);
    LPProfile P;
    std::vector<std::pair<int, double>> cases;
    for (int j : js)
      for (double t : ts) cases.push_back({j, t});
    std::vector<ScalingResidual> res(cases.size());
    parallel_for((int)cases.size(), c.jobs, [&](int i) {
      auto [j, t] = cases[i];
      res[i] = kernel_scaling_check(G, j, t, M, make_lattice(p, std::ldexp(L, -2 * j), n_s), P);
    });
    std::ostringstream csv;
    csv << std::setprecision(17) << "j,t,relabel,pointwise,scale\n";
    double worst = 0;
    for (size_t i = 0; i < cases.size(); ++i) {
      csv << cases[i].first << ',' << cases[i].second << ',' << res[i].relabel << ',' << res[i].pointwise << ','
          << res[i].scale << '\n';
      worst = std::max(worst, res[i].residual());
    }
    json body = {{"worst_residual", worst}, {"pass", worst <= 1e-8}};
    a.csv_file("scaling_check.csv", csv.str());
    a.json_file("scaling_check.json", a.envelope(body, {{"residual", 1e-8}}));
    std::cout << "worst residual " << worst << "\n";
    require(worst <= 1e-8, "scaling residual above 1e-8");
  }
};

struct TransportDemo {
  int m0 = 1, M = 3, n_s = 256, steps = 20;
  double L = 64, lam0 = 1.5, width = 0.3, t_max = 10;
  void setup(CLI::App* s) {
    s->add_option("--m0", m0, "Laguerre index carrying the data");
    s->add_option("--M", M);
    s->add_option("--L", L);
    s->add_option("--n_s", n_s);
    s->add_option("--lam0", lam0, "Centre of the lambda packet");
    s->add_option("--width", width, "Packet variance parameter");
    s->add_option("--t_max", t_max);
    s->add_option("--steps", steps);
  }
  json cfg() const {
    return {{"m0", m0},     {"M", M},         {"L", L},         {"n_s", n_s},
            {"lam0", lam0}, {"width", width}, {"t_max", t_max}, {"steps", steps}};
  }
  void run(const Artifacts& a, const Common&) const {
    HTypeGroup G = build_group(1, 1);
    SphericalSpectrum S = single_mode_packet(G, M, make_lattice(1, L, n_s), m0, lam0, width);
    std::vector<double> ts;
    for (int k = 0; k <= steps; ++k) ts.push_back(t_max * k / steps);
    TransportReport rep = heisenberg_transport(S, m0, ts);
    double expected = 2.0 * m0 + G.d;
    bool ok = rep.sup_norm_drift <= 1e-6 && std::abs(rep.measured_shift_slope / expected - 1) <= 0.01;
    json body = transport_json(rep);
    body["expected_slope"] = expected;
    body["pass"] = ok;
    std::ostringstream csv;
    csv << std::setprecision(17) << "t,sup_norm,shift\n";
    for (size_t i = 0; i < rep.times.size(); ++i)
      csv << rep.times[i] << ',' << rep.sup_norms[i] << ',' << rep.shifts[i] << '\n';
    a.csv_file("transport_demo.csv", csv.str());
    a.json_file("transport_demo.json", a.envelope(body, {{"sup_norm_drift", 1e-6}, {"slope_relative", 0.01}}));
    std::cout << "slope " << rep.measured_shift_slope << " (expected " << expected << "), sup drift "
              << rep.sup_norm_drift << "\n";
    require(ok, "transport demonstration outside tolerance");
  }
};

struct Admissible {
  int p = 2, N = -1;
  std::string q = "inf", r = "2";
  void setup(CLI::App* s) {
    s->add_option("--p", p);
    s->add_option("--q", q, "Time exponent (inf allowed)");
    s->add_option("--r", r, "Space exponent (inf allowed)");
    s->add_option("--N", N, "Homogeneous dimension for sigma");
  }
  json cfg() const { return {{"p", p}, {"q", q}, {"r", r}, {"N", N}}; }
  void run(const Artifacts& a, const Common&) const {
    std::optional<int> n;
    if (N > 0) n = N;
    AdmissiblePair pr = classify_pair(parse_exponent(q), parse_exponent(r), p, n);
    std::string csv = pair_csv_header() + pair_csv_row(pr);
    a.csv_file("admissible.csv", csv);
    a.json_file("admissible.json", a.envelope(pair_json(pr)));
    std::cout << csv;
  }
};

struct Exponents {
  int d = 2, p = 2;
  std::string alpha = "3";
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--alpha", alpha, "Nonlinearity degree (decimal or fraction)");
  }
  json cfg() const { return {{"d", d}, {"p", p}, {"alpha", alpha}}; }
  void run(const Artifacts& a, const Common&) const {
    json body = exponent_json(critical_exponents(d, p, parse_rational(alpha)));
    a.json_file("exponents.json", a.envelope(body));
    std::cout << body.dump(2) << "\n";
  }
};

struct PairSearch {
  int d = 2, p = 2, steps = 8;
  std::string alpha = "2", s_min, s_max, delta;
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--alpha", alpha);
    s->add_option("--s_min", s_min, "First regularity (default s_*)");
    s->add_option("--s_max", s_max, "Last regularity (default N/2 minus a step)");
    s->add_option("--steps", steps, "Equal rational steps between s_min and s_max");
    s->add_option("--delta", delta, "Fixed delta (default (s - s_*)/2)");
  }
  json cfg() const {
    return {{"d", d}, {"p", p}, {"alpha", alpha}, {"s_min", s_min}, {"s_max", s_max}, {"steps", steps}, {"delta", delta}};
  }
  void run(const Artifacts& a, const Common&) const {
    Rational al = parse_rational(alpha);
    ExponentReport e = critical_exponents(d, p, al);
    Rational lo = s_min.empty() ? e.s_star : parse_rational(s_min);
    Rational half_n(e.N, 2);
    Rational hi = s_max.empty() ? e.s_star + (half_n - e.s_star) * Rational(steps - 1, steps) : parse_rational(s_max);
    if (steps < 1) fail(Errc::ConfigInvalid, "steps must be positive");
    std::ostringstream csv;
    csv << "s,q,r,admissible,endpoint,sigma,status\n";
    json rows = json::array();
    for (int k = 0; k <= steps; ++k) {
      Rational s = lo + (hi - lo) * Rational(k, steps);
      std::optional<Rational> dl;
      if (!delta.empty()) dl = parse_rational(delta);
      try {
        AdmissiblePair pr = find_admissible(d, p, al, s, dl);
        std::string row = pair_csv_row(pr);
        row.pop_back();
        csv << rational_str(s) << ',' << row << ",ok\n";
        json j = pair_json(pr);
        j["s"] = rational_str(s);
        rows.push_back(j);
      } catch (const Error& err) {
        csv << rational_str(s) << ",,,,,," << errc_name(err.code()) << '\n';
        rows.push_back({{"s", rational_str(s)}, {"error", errc_name(err.code())}});
      }
    }
    a.csv_file("pair_search.csv", csv.str());
    a.json_file("pair_search.json", a.envelope({{"exponents", exponent_json(e)}, {"rows", rows}}));
    std::cout << csv.str();
  }
};

struct StrichartzScan {
  int d = 2, p = 2, M = 4, panels = 6, nodes = 12;
  std::string q = "4", r = "inf";
  double T = 32;
  std::vector<int> js{0, 1, -1};
  void setup(CLI::App* s) {
    s->add_option("--d", d);
    s->add_option("--p", p);
    s->add_option("--M", M);
    s->add_option("--q", q);
    s->add_option("--r", r, "2 or inf");
    s->add_option("--T", T, "Horizon at j = 0; dilation j uses T / 4^j");
    s->add_option("--panels", panels, "Dyadic time panels (saturation curve levels)");
    s->add_option("--nodes", nodes, "Gauss nodes per panel");
    s->add_option("--j", js, "Dilations of the datum");
  }
  json cfg() const {
    return {{"d", d}, {"p", p}, {"M", M}, {"q", q}, {"r", r}, {"T", T}, {"panels", panels}, {"nodes", nodes}, {"j", js}};
  }
  void run(const Artifacts& a, const Common& c) const {
    HTypeGroup G = build_group(d, p);
    LPProfile P;
    AdmissiblePair pr = classify_pair(parse_exponent(q), parse_exponent(r), p, G.N());
    StrichartzOptions o;
    o.panels = panels;
    o.nodes = nodes;
    o.jobs = c.jobs;
    MultiplierKernel K = MultiplierKernel::lp(d, p, M, P, 0);
    json curves = json::array();
    double base = 0, worst = 0;
    for (int j : js) {
      StrichartzCurve cv = strichartz_quotient(K.dilated(j), pr, std::ldexp(T, -2 * j), o);
      json jj = strichartz_json(cv);
      jj["j"] = j;
      curves.push_back(jj);
      if (base == 0) base = cv.value();
      worst = std::max(worst, std::abs(cv.value() / base - 1));
    }
    json body = {{"pair", pair_json(pr)}, {"curves", curves}, {"worst_dilation_change", worst}};
    a.json_file("strichartz_scan.json", a.envelope(body));
    std::cout << body.dump(2) << "\n";
  }
};

struct SolveNls {
  int d = 2, p = 2, M = 4, n_s = 16, n_t = 16, iters = 30;
  std::string alpha = "5", s;
  double mu_re = 1, mu_im = 0, T = 0.25, L = 32, amp = 600, x0 = 1.0, width = 0.6;
  bool allow_non_odd = false;
  void setup(CLI::App* sub) {
    sub->add_option("--d", d);
    sub->add_option("--p", p);
    sub->add_option("--alpha", alpha);
    sub->add_option("--mu_re", mu_re);
    sub->add_option("--mu_im", mu_im);
    sub->add_option("--s", s, "Regularity (default s_*)");
    sub->add_option("--T", T);
    sub->add_option("--n_t", n_t, "Uniform time steps");
    sub->add_option("--M", M);
    sub->add_option("--L", L);
    sub->add_option("--n_s", n_s);
    sub->add_option("--iters", iters, "Picard iteration cap");
    sub->add_option("--amp", amp, "H^s norm of the initial datum");
    sub->add_option("--x0", x0, "Spectral centre of the random datum");
    sub->add_option("--width", width, "Log-width of the random datum");
    sub->add_flag("--allow_non_odd", allow_non_odd, "Permit non-odd-integer alpha");
  }
  json cfg() const {
    return {{"d", d},         {"p", p},       {"alpha", alpha}, {"mu_re", mu_re}, {"mu_im", mu_im},
            {"s", s},         {"T", T},       {"n_t", n_t},     {"M", M},         {"L", L},
            {"n_s", n_s},     {"iters", iters}, {"amp", amp},   {"x0", x0},       {"width", width},
            {"allow_non_odd", allow_non_odd}};
  }
  void run(const Artifacts& a, const Common& c) const {
    Rational al = parse_rational(alpha);
    ExponentReport e = critical_exponents(d, p, al);
    Rational sr = s.empty() ? e.s_star : parse_rational(s);
    NLSParams P;
    P.alpha = to_double(al);
    P.mu = cplx(mu_re, mu_im);
    P.s = to_double(sr);
    P.T = T;
    P.n_t = n_t;
    P.pair = find_admissible(d, p, al, sr);
    P.s_star = to_double(e.s_star);
    P.allow_non_odd = allow_non_odd;
    P.jobs = c.jobs;
    HTypeGroup G = build_group(d, p);
    std::mt19937_64 rng(c.seed);
    SphericalSpectrum u0 = random_band_spectrum(G, M, make_lattice(p, L, n_s), rng, x0, width);
    u0 = cplx(amp / plancherel_norm(frac_power(u0, P.s, true))) * u0;
    SolverPath path = picard_solve(u0, P, iters);
    double residual = fixed_point_residual(path, u0, P);
    json body = {{"exponents", exponent_json(e)},
                 {"pair", pair_json(P.pair)},
                 {"iterations", path.diag.iterations},
                 {"converged", path.diag.converged},
                 {"contraction_factor", path.diag.contraction_factor()},
                 {"fixed_point_residual", residual},
                 {"mass_drift", mass_drift(path)},
                 {"d_Xs", path.diag.d_xs},
                 {"d_X0", path.diag.d_x0}};
    a.csv_file("solve_nls.csv", picard_csv(path.diag, T));
    write_spectrum(a.path("solve_nls_u0.spec"), u0);
    write_spectrum(a.path("solve_nls_uT.spec"), path.states.back());
    a.json_file("solve_nls.json", a.envelope(body, {{"picard_stop", 1e-10}}));
    std::cout << body.dump(2) << "\n";
  }
};

struct Report {
  std::string in;
  void setup(CLI::App* s) { s->add_option("--in", in, "Directory with artifacts (default: the output directory)"); }
  json cfg() const { return {{"in", in}}; }
  void run(const Artifacts& a, const Common& c) const {
    const char* env = std::getenv("HTYPE_LAB_OUT");
    fs::path dir = !in.empty() ? fs::path(in) : (env && *env ? fs::path(env) : fs::path(c.out));
    std::vector<fs::path> files;
    if (fs::exists(dir))
      for (const auto& ent : fs::directory_iterator(dir))
        if (ent.path().extension() == ".json" && ent.path().filename() != "report.json") files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    std::ostringstream md, csv;
    md << "# htype-lab report\n\n| artifact | command | config hash | pass |\n|---|---|---|---|\n";
    csv << "artifact,command,config_hash,pass\n";
    json list = json::array();
    for (const auto& f : files) {
      json j;
      try {
        j = json::parse(read_text(f.string()));
      } catch (const json::exception&) {
        continue;
      }
      if (!j.is_object() || !j.contains("command")) continue;
      std::string pass = j.contains("pass") ? (j["pass"].get<bool>() ? "yes" : "no") : "-";
      std::string name = f.filename().string();
      md << "| " << name << " | " << j["command"].get<std::string>() << " | " << j.value("config_hash", "") << " | "
         << pass << " |\n";
      csv << name << ',' << j["command"].get<std::string>() << ',' << j.value("config_hash", "") << ',' << pass << '\n';
      list.push_back({{"artifact", name}, {"command", j["command"]}, {"pass", pass}});
    }
    write_text(a.path("report.md"), md.str());
    a.csv_file("report.csv", csv.str());
    a.json_file("report.json", a.envelope({{"artifacts", list}}));
    std::cout << md.str();
  }
};

template <class Cmd>
void wire(CLI::App& app, const std::string& name, const std::string& help, Cmd& cmd, Common& common,
          std::map<CLI::App*, std::function<void()>>& runners) {
  CLI::App* sub = app.add_subcommand(name, help);
  add_common(sub, common);
  cmd.setup(sub);
  runners[sub] = [sub, name, &cmd, &common] {
    apply_config(sub, common.config);
    json cfg = cmd.cfg();
    cfg["seed"] = common.seed;
    Artifacts a(name, cfg, common.out);
    cmd.run(a, common);
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Schrodinger evolution on H-type groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;
  GroupCheck group_check;
  TransformRoundtrip transform_roundtrip;
  DispersiveFit dispersive_fit;
  ScalingCheck scaling_check;
  TransportDemo transport_demo;
  Admissible admissible;
  Exponents exponents;
  PairSearch pair_search;
  StrichartzScan strichartz_scan;
  SolveNls solve_nls;
  Report report;
  std::map<CLI::App*, std::function<void()>> runners;
  wire(app, "group-check", "Matrix axioms and group-law identities; JSON report", group_check, common, runners);
  wire(app, "transform-roundtrip",
       "Inverse/forward round trips of random spectra. CSV: trial, roundtrip_rel_l2, plancherel_rel_diff",
       transform_roundtrip, common, runners);
  wire(app, "dispersive-fit", "Sup-norm decay of the evolved band kernel. CSV: t, sup_norm, bound_value, ratio",
       dispersive_fit, common, runners);
  wire(app, "scaling-check", "Kernel dilation identity. CSV: j, t, relabel, pointwise, scale", scaling_check, common,
       runners);
  wire(app, "transport-demo", "p = 1 single-mode transport. CSV: t, sup_norm, shift", transport_demo, common, runners);
  wire(app, "admissible", "Classify one pair. CSV: q, r, admissible, endpoint, sigma", admissible, common, runners);
  wire(app, "exponents", "Critical exponents s_c and s_*; JSON", exponents, common, runners);
  wire(app, "pair-search", "Admissible pairs over a regularity range. CSV: s, q, r, admissible, endpoint, sigma, status",
       pair_search, common, runners);
  wire(app, "strichartz-scan", "Truncated Strichartz quotients and saturation curves; JSON", strichartz_scan, common,
       runners);
  wire(app, "solve-nls", "Picard iteration. CSV: iteration, d_Xs, d_X0, ratio, mass, T", solve_nls, common, runners);
  wire(app, "report", "Summarize artifacts into report.md and report.csv", report, common, runners);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    for (auto* sub : app.get_subcommands()) runners.at(sub)();
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_resolution_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
