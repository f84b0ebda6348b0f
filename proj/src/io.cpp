#include "htype/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "htype/errors.hpp"
#include "htype/transform.hpp"

namespace htype {

json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json group_json(const HTypeGroup& G) {
  return {{"d", G.d}, {"p", G.p}, {"U", G.U}, {"convention", "clifford-v1"}};
}

HTypeGroup group_from_json(const json& j) {
  try {
    HTypeGroup G;
    G.d = j.at("d").get<int>();
    G.p = j.at("p").get<int>();
    if (j.contains("convention") && j.at("convention") != "clifford-v1")
      fail(Errc::ConfigInvalid, "unknown group convention " + j.at("convention").dump());
    if (!j.contains("U")) return build_group(G.d, G.p);
    G.U = j.at("U").get<std::vector<std::vector<double>>>();
    if (!check_invariants(G).ok()) fail(Errc::ConfigInvalid, "group matrices violate the H-type invariants");
    return G;
  } catch (const json::exception& e) {
    fail(Errc::ConfigInvalid, std::string("group descriptor: ") + e.what());
  }
}

namespace {

void put_f64(std::ostream& os, double x) {
  unsigned char b[8];
  std::memcpy(b, &x, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) fail(Errc::IoError, "spectrum file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
  double x;
  std::memcpy(&x, b, 8);
  return x;
}

}  // namespace

void write_spectrum(const std::string& path, const SphericalSpectrum& S) {
  RadialGrid rho = default_radial_grid(S);
  json h = {{"d", S.G.d},
            {"p", S.G.p},
            {"M", S.M},
            {"L", S.grid.L},
            {"n_s", S.grid.n_s},
            {"rho", {{"R", rho.R}, {"n", rho.size()}, {"rule", "gauss-legendre"}}},
            {"endianness", "little"},
            {"layout", "m-major, bins in FFT order, (re, im) f64"},
            {"version", kSpectrumFileVersion}};
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::IoError, "cannot open " + path + " for writing");
  os << h.dump() << '\n';
  for (cplx c : S.c) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) fail(Errc::IoError, "write failed for " + path);
}

SphericalSpectrum read_spectrum(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::IoError, "cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) fail(Errc::IoError, "missing header in " + path);
  json h;
  try {
    h = json::parse(line);
    if (h.at("version").get<int>() != kSpectrumFileVersion) fail(Errc::IoError, "unsupported spectrum file version");
    if (h.at("endianness") != "little") fail(Errc::IoError, "unsupported endianness");
    HTypeGroup G = build_group(h.at("d").get<int>(), h.at("p").get<int>());
    LatticeGrid grid = make_lattice(G.p, h.at("L").get<double>(), h.at("n_s").get<int>());
    SphericalSpectrum S = zero_spectrum(G, h.at("M").get<int>(), grid);
    for (auto& c : S.c) {
      double re = get_f64(is);
      c = cplx(re, get_f64(is));
    }
    if (is.peek() != std::char_traits<char>::eof()) fail(Errc::IoError, "trailing bytes in " + path);
    return S;
  } catch (const json::exception& e) {
    fail(Errc::IoError, std::string("bad spectrum header: ") + e.what());
  }
}

std::string spectrum_csv(const SphericalSpectrum& S) {
  std::ostringstream os;
  os << std::setprecision(17) << "m";
  for (int a = 0; a < S.grid.p; ++a) os << ",k" << a;
  os << ",lambda_abs,abs_coeff\n";
  for (int m = 0; m <= S.M; ++m)
    for (long b = 0; b < S.n_bins(); ++b) {
      os << m;
      for (int a = 0; a < S.grid.p; ++a) os << ',' << S.grid.freq_index(b, a);
      os << ',' << S.grid.lam_abs(b) << ',' << std::abs(S.at(m, b)) << '\n';
    }
  return os.str();
}

json norm_report_json(const NormReport& r) {
  return {{"norm_kind", r.norm_kind},         {"s", r.s},
          {"r", number_json(r.r)},            {"q", number_json(r.q)},
          {"value", number_json(r.value)},    {"band_truncation", r.band_truncation},
          {"truncation_warning", r.truncation_warning}};
}

json decay_fit_json(const DecayFit& f) {
  return {{"fitted_exponent", f.fitted_exponent},
          {"r_squared", f.r_squared},
          {"window", {f.t_min, f.t_max}},
          {"times", f.times},
          {"sup_norms", f.sup_norms}};
}

std::string decay_csv(const DecayFit& f, double bound_constant, double exponent) {
  std::ostringstream os;
  os << std::setprecision(17) << "t,sup_norm,bound_value,ratio\n";
  for (size_t i = 0; i < f.times.size(); ++i) {
    double t = f.times[i];
    double bound = bound_constant * std::min(1.0, std::pow(std::abs(t), -exponent));
    os << t << ',' << f.sup_norms[i] << ',' << bound << ',' << f.sup_norms[i] / bound << '\n';
  }
  return os.str();
}

json transport_json(const TransportReport& r) {
  return {{"times", r.times},
          {"sup_norms", r.sup_norms},
          {"shifts", r.shifts},
          {"sup_norm_drift", r.sup_norm_drift},
          {"measured_shift_slope", r.measured_shift_slope}};
}

std::string pair_csv_header() { return "q,r,admissible,endpoint,sigma\n"; }

std::string pair_csv_row(const AdmissiblePair& a) {
  std::ostringstream os;
  os << a.q.str() << ',' << a.r.str() << ',' << (a.admissible ? "true" : "false") << ','
     << (a.endpoint ? "true" : "false") << ',' << (a.sigma ? rational_str(*a.sigma) : "") << '\n';
  return os.str();
}

json pair_json(const AdmissiblePair& a) {
  json j = {{"q", a.q.str()}, {"r", a.r.str()}, {"admissible", a.admissible}, {"endpoint", a.endpoint}};
  j["sigma"] = a.sigma ? json(rational_str(*a.sigma)) : json(nullptr);
  return j;
}

json exponent_json(const ExponentReport& e) {
  return {{"d", e.d},
          {"p", e.p},
          {"alpha", rational_str(e.alpha)},
          {"N", e.N},
          {"s_c", rational_str(e.s_c)},
          {"s_star", rational_str(e.s_star)},
          {"branch", e.branch}};
}

json strichartz_json(const StrichartzCurve& c) {
  return {{"sigma", c.sigma},
          {"T", c.T},
          {"quotient", c.quotient},
          {"last_doubling_change", c.last_doubling_change()}};
}

std::string picard_csv(const PicardDiagnostics& d, double T) {
  std::ostringstream os;
  os << std::setprecision(17) << "iteration,d_Xs,d_X0,ratio,mass,T\n";
  for (size_t i = 0; i < d.d_xs.size(); ++i)
    os << i + 1 << ',' << d.d_xs[i] << ',' << d.d_x0[i] << ',' << d.ratio[i] << ',' << d.mass[i] << ',' << T << '\n';
  return os.str();
}

json probe_json(const ProbeFamily& f) {
  json trials = json::array();
  for (const auto& t : f.trials)
    trials.push_back({{"ratio", number_json(t.ratio)}, {"rescaled_ratio", number_json(t.rescaled_ratio)}});
  return {{"name", f.name},
          {"trials", trials},
          {"max_ratio", number_json(f.max_ratio())},
          {"median_ratio", number_json(f.median_ratio())},
          {"worst_covariance", number_json(f.worst_covariance())},
          {"bounded", f.bounded()}};
}

std::uint64_t config_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::IoError, "cannot open " + path + " for writing");
  os << text;
  if (!os) fail(Errc::IoError, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace htype
