#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "htype/dispersive.hpp"
#include "htype/exponents.hpp"
#include "htype/group.hpp"
#include "htype/nls.hpp"
#include "htype/probes.hpp"
#include "htype/spectral_calculus.hpp"
#include "htype/strichartz.hpp"

namespace htype {

using json = nlohmann::json;

inline constexpr int kSpectrumFileVersion = 1;

// {d, p, U, convention}
json group_json(const HTypeGroup& G);
HTypeGroup group_from_json(const json& j);

// One JSON header line, then n_coeff little-endian (re, im) f64 pairs in (m, bin) order.
void write_spectrum(const std::string& path, const SphericalSpectrum& S);
SphericalSpectrum read_spectrum(const std::string& path);
// m, frequency indices, |lambda|, |c(m, lambda)|
std::string spectrum_csv(const SphericalSpectrum& S);

json norm_report_json(const NormReport& r);
json decay_fit_json(const DecayFit& f);
std::string decay_csv(const DecayFit& f, double bound_constant, double exponent);
json transport_json(const TransportReport& r);
std::string pair_csv_header();
std::string pair_csv_row(const AdmissiblePair& a);
json pair_json(const AdmissiblePair& a);
json exponent_json(const ExponentReport& e);
json strichartz_json(const StrichartzCurve& c);
std::string picard_csv(const PicardDiagnostics& d, double T);
json probe_json(const ProbeFamily& f);

// FNV-1a (64 bit) of the compact dump of j; nlohmann objects keep keys sorted.
std::uint64_t config_hash(const json& j);
std::string hash_hex(std::uint64_t h);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// JSON numbers cannot hold infinity; non-finite values are written as strings.
json number_json(double x);

}  // namespace htype
