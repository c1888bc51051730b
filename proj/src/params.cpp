#include "mirrorsim/params.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string_view>

namespace mirrorsim {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    fail(Errc::NonFinite, std::string(name) + " must be finite");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

AtomParams validate(const AtomParams& p) {
  require_finite(p.omega1, "omega1");
  require_finite(p.omega2, "omega2");
  require_finite(p.delta1, "delta1");
  require_finite(p.delta2, "delta2");
  require_finite(p.gamma1, "gamma1");
  require_finite(p.gamma2, "gamma2");
  if (p.gamma1 <= 0.0) fail(Errc::NonPositiveRate, "gamma1 must be > 0");
  if (p.gamma2 <= 0.0) fail(Errc::NonPositiveRate, "gamma2 must be > 0");
  if (p.omega1 < 0.0) fail(Errc::NegativeRabi, "omega1 must be >= 0");
  if (p.omega2 < 0.0) fail(Errc::NegativeRabi, "omega2 must be >= 0");
  return p;
}

MirrorConfig validate(const MirrorConfig& cfg) {
  require_finite(cfg.r, "r");
  require_finite(cfg.k31, "k31");
  if (cfg.r <= 0.0) fail(Errc::NonPositiveDistance, "atom-mirror distance r must be > 0");
  if (cfg.k31 <= 0.0) fail(Errc::NonPositiveDistance, "wavenumber k31 must be > 0");
  if (!cfg.dipole_parallel) {
    fail(Errc::InvalidConfig, "only the parallel-dipole geometry is supported");
  }
  return cfg;
}

double effective_image_distance_um(const LensGeometry& g) {
  require_finite(g.f_mm, "f");
  require_finite(g.R_mm, "R");
  if (g.f_mm <= 0.0) fail(Errc::NonPositiveDistance, "focal length f must be > 0");
  if (g.R_mm <= 0.0) fail(Errc::NonPositiveDistance, "mirror-lens distance R must be > 0");
  if (g.R_mm <= g.f_mm) {
    fail(Errc::InvalidLens, "mirror-lens distance R must exceed the focal length f");
  }
  return g.f_mm * g.f_mm / g.R_mm * 1000.0;  // mm -> um
}

std::map<std::string, double> read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoFailure, "cannot open " + path.string());

  std::map<std::string, double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;

    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      fail(Errc::InvalidConfig,
           path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      fail(Errc::InvalidConfig,
           path.string() + ":" + std::to_string(lineno) + ": empty key or value");
    }
    char* end = nullptr;
    double parsed = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size()) {
      fail(Errc::InvalidConfig,
           path.string() + ":" + std::to_string(lineno) + ": '" + value + "' is not a number");
    }
    out[key] = parsed;  // later occurrences override earlier ones
  }
  return out;
}

}  // namespace mirrorsim
