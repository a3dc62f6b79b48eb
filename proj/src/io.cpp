#include "ctorsion/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "ctorsion/error.hpp"

namespace ctorsion {

namespace {

constexpr std::string_view kHeader = "param,x,y,z";
constexpr std::string_view kHeaderFull = "param,x,y,z,kappa,tau,kappa_g";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double at_or_nan(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
    throw ValidationError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string to_csv(const Polyline& curve) {
  if (curve.params.size() != curve.points.size())
    throw ValidationError("to_csv: params and points differ in length");
  std::string out;
  const bool full = curve.invariants.has_value();
  out += full ? kHeaderFull : kHeader;
  out += '\n';
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec3& p = curve.points[i];
    out += format_double(curve.params[i]);
    for (double v : {p.x, p.y, p.z}) {
      out += ',';
      out += format_double(v);
    }
    if (full) {
      const CurveInvariants& inv = *curve.invariants;
      for (double v : {at_or_nan(inv.kappa, i), at_or_nan(inv.tau, i), at_or_nan(inv.kappa_g, i)}) {
        out += ',';
        out += format_double(v);
      }
    }
    out += '\n';
  }
  return out;
}

Polyline from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError("CSV: missing header");
  bool full = false;
  if (lines[0] == kHeaderFull)
    full = true;
  else if (lines[0] != kHeader)
    throw ValidationError("CSV: unexpected header '" + std::string(lines[0]) + "'");

  Polyline curve;
  curve.provenance = "csv";
  CurveInvariants inv;
  const std::size_t width = full ? 7 : 4;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split(lines[r], ',');
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "CSV: row " << r << " has " << fields.size() << " fields, expected " << width;
      throw ValidationError(msg.str());
    }
    curve.params.push_back(parse_double(fields[0]));
    curve.points.push_back({parse_double(fields[1]), parse_double(fields[2]), parse_double(fields[3])});
    if (full) {
      inv.kappa.push_back(parse_double(fields[4]));
      inv.tau.push_back(parse_double(fields[5]));
      inv.kappa_g.push_back(parse_double(fields[6]));
    }
  }
  if (full) curve.invariants = std::move(inv);
  return curve;
}

Polyline to_polyline(const SphericalCurve& curve) {
  Polyline out;
  out.params = curve.t;
  out.points = curve.points;
  out.provenance = "binormal";
  return out;
}

std::string to_obj(const Polyline& curve) {
  if (curve.empty()) throw ValidationError("OBJ export: empty curve");
  const bool closed = curve.size() > 2 && curve.is_closed();
  const std::size_t n = closed ? curve.size() - 1 : curve.size();
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = curve.points[i];
    out += "v " + format_double(p.x) + ' ' + format_double(p.y) + ' ' + format_double(p.z) + '\n';
  }
  out += 'l';
  for (std::size_t i = 1; i <= n; ++i) out += ' ' + std::to_string(i);
  if (closed) out += " 1";
  out += '\n';
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.empty()) throw ValidationError("output path is empty");
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw ValidationError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_csv(const std::filesystem::path& path, const Polyline& curve) { write_file_atomic(path, to_csv(curve)); }

Polyline read_csv(const std::filesystem::path& path) { return from_csv(read_file(path)); }

nlohmann::json to_json(const ClosureReport& r) {
  return {{"integrals.Ixy", r.integrals.Ixy},
          {"integrals.Iyz", r.integrals.Iyz},
          {"integrals.Izx", r.integrals.Izx},
          {"closure_gap", r.closure_gap},
          {"symmetry_residual", r.symmetry_residual},
          {"quadrature_tolerance", r.quadrature_tolerance}};
}

nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json j{{"samples", r.samples},
                   {"retained", r.retained},
                   {"kappa_min", r.kappa_min},
                   {"kappa_max", r.kappa_max},
                   {"tau_mean", r.tau_mean},
                   {"tau_max_dev", r.tau_max_dev},
                   {"inflection_count", r.inflection_count},
                   {"length", r.length}};
  nlohmann::json taus = nlohmann::json::array();
  for (const auto& [s, t] : r.tau_samples) taus.push_back({s, t});
  j["tau_samples"] = std::move(taus);
  for (const auto& [k, v] : r.identity_residuals) j["identity_residuals." + k] = v;
  return j;
}

nlohmann::json to_json(const ClosureSolution& s) {
  return {{"m", s.params.m},
          {"n", s.params.n},
          {"alpha", s.params.alpha},
          {"beta", s.params.beta},
          {"residual", s.residual},
          {"bracket_lo", s.bracket_lo},
          {"bracket_hi", s.bracket_hi},
          {"iterations", s.iterations},
          {"path", to_string(s.path)}};
}

nlohmann::json to_json(const ZetaSample& z) {
  return {{"tau", z.tau}, {"zeta", z.zeta}, {"extrapolation_error", z.extrapolation_error}};
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t lineNo = 0;
  for (auto raw : split(text, '\n')) {
    ++lineNo;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(lineNo) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ValidationError("config line " + std::to_string(lineNo) + ": empty key");
    if (!out.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
      throw ValidationError("config line " + std::to_string(lineNo) + ": repeated key '" + key + "'");
  }
  return out;
}

}  // namespace ctorsion
