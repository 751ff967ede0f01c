#include "saddle/manifest.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace saddle {

using nlohmann::json;

std::string to_string(torsion::Scheme s) {
  switch (s) {
    case torsion::Scheme::ES: return "es";
    case torsion::Scheme::IS: return "is";
    case torsion::Scheme::ISS: return "iss";
  }
  return "es";
}

torsion::Scheme scheme_from_string(const std::string& s) {
  if (s == "es") return torsion::Scheme::ES;
  if (s == "is") return torsion::Scheme::IS;
  if (s == "iss") return torsion::Scheme::ISS;
  throw std::invalid_argument("unknown scheme '" + s + "' (want es|is|iss)");
}

std::string to_string(Domain d) {
  switch (d) {
    case Domain::unit_square: return "square";
    case Domain::quarter_square: return "quarter";
    case Domain::disk_in_square: return "disk";
  }
  return "square";
}

Domain domain_from_string(const std::string& s) {
  if (s == "square") return Domain::unit_square;
  if (s == "quarter") return Domain::quarter_square;
  if (s == "disk") return Domain::disk_in_square;
  throw std::invalid_argument("unknown domain '" + s + "' (want square|quarter|disk)");
}

GridSpec grid_for_label(int label, Domain domain, double disk_radius,
                        double disk_cx, double disk_cy) {
  if (label < 7 || label % 2 == 0)
    throw std::invalid_argument("size label must be an odd node count >= 7");
  switch (domain) {
    case Domain::quarter_square: return GridSpec::quarter((label - 1) / 2);
    case Domain::unit_square: return GridSpec::unit_square(label - 1);
    case Domain::disk_in_square:
      return GridSpec::disk(label - 1, disk_radius, disk_cx, disk_cy);
  }
  throw std::invalid_argument("bad domain");
}

torsion::TorsionConfig RunManifest::to_config() const {
  torsion::TorsionConfig cfg;
  cfg.grid = grid_for_label(size, domain, disk_radius, disk_center_x,
                            disk_center_y);
  cfg.lambda = lambda;
  cfg.epsilon = epsilon.value_or(0.0);
  cfg.scheme = scheme;
  cfg.kappa = kappa;
  if (alpha.has_value() != beta.has_value())
    throw std::invalid_argument("manifest: alpha and beta must both be set or both auto");
  if (alpha) cfg.steps = StepParams(*alpha, *beta);
  cfg.stop_tolerance = stop_tolerance;
  cfg.max_outer_iters = max_outer_iters;
  cfg.inner_tolerance = inner_tolerance;
  cfg.validate();
  return cfg;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("manifest: bad numeric value for '" + key + "': " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("manifest: bad integer value for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("manifest: bad boolean value for '" + key + "': " + v);
}

std::string format_double(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

}  // namespace

RunManifest parse_manifest(std::istream& is) {
  RunManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("manifest line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "scheme") m.scheme = scheme_from_string(val);
    else if (key == "domain") m.domain = domain_from_string(val);
    else if (key == "size") m.size = int(parse_long(key, val));
    else if (key == "lambda") m.lambda = parse_double(key, val);
    else if (key == "epsilon")
      m.epsilon = (val == "auto") ? std::optional<double>{}
                                  : std::optional<double>{parse_double(key, val)};
    else if (key == "kappa") m.kappa = int(parse_long(key, val));
    else if (key == "alpha")
      m.alpha = (val == "auto") ? std::optional<double>{}
                                : std::optional<double>{parse_double(key, val)};
    else if (key == "beta")
      m.beta = (val == "auto") ? std::optional<double>{}
                               : std::optional<double>{parse_double(key, val)};
    else if (key == "stop_tolerance") m.stop_tolerance = parse_double(key, val);
    else if (key == "max_outer_iters") m.max_outer_iters = parse_long(key, val);
    else if (key == "inner_tolerance") m.inner_tolerance = parse_double(key, val);
    else if (key == "disk_radius") m.disk_radius = parse_double(key, val);
    else if (key == "disk_center_x") m.disk_center_x = parse_double(key, val);
    else if (key == "disk_center_y") m.disk_center_y = parse_double(key, val);
    else if (key == "seed") m.seed = parse_long(key, val);
    else if (key == "output_dir") m.output_dir = val;
    else if (key == "emit_fields") m.emit_fields = parse_bool(key, val);
    else
      throw std::invalid_argument("manifest: unknown key '" + key + "'");
  }
  // Surface config errors (negative epsilon and friends) at parse time.
  m.to_config();
  return m;
}

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open manifest: " + path);
  return parse_manifest(is);
}

std::string render_manifest(const RunManifest& m) {
  std::ostringstream os;
  os << "scheme = " << to_string(m.scheme) << '\n';
  os << "domain = " << to_string(m.domain) << '\n';
  os << "size = " << m.size << '\n';
  os << "lambda = " << format_double(m.lambda) << '\n';
  os << "epsilon = " << (m.epsilon ? format_double(*m.epsilon) : "auto") << '\n';
  os << "kappa = " << m.kappa << '\n';
  os << "alpha = " << (m.alpha ? format_double(*m.alpha) : "auto") << '\n';
  os << "beta = " << (m.beta ? format_double(*m.beta) : "auto") << '\n';
  os << "stop_tolerance = " << format_double(m.stop_tolerance) << '\n';
  os << "max_outer_iters = " << m.max_outer_iters << '\n';
  os << "inner_tolerance = " << format_double(m.inner_tolerance) << '\n';
  os << "disk_radius = " << format_double(m.disk_radius) << '\n';
  os << "disk_center_x = " << format_double(m.disk_center_x) << '\n';
  os << "disk_center_y = " << format_double(m.disk_center_y) << '\n';
  os << "seed = " << m.seed << '\n';
  os << "output_dir = " << m.output_dir << '\n';
  os << "emit_fields = " << (m.emit_fields ? "true" : "false") << '\n';
  return os.str();
}

void write_history_csv(std::ostream& os, const torsion::TorsionResult& result) {
  os << "iter,residual,primal_energy,dual_energy\n";
  const auto& res = result.report.residual_history;
  for (std::size_t k = 0; k < res.size(); ++k) {
    os << (k + 1) << ',' << format_double(res[k]) << ','
       << format_double(result.primal_energy_history[k]) << ','
       << format_double(result.dual_energy_history[k]) << '\n';
  }
}

void write_summary_json(std::ostream& os, const RunManifest& manifest,
                        const torsion::TorsionResult& result) {
  const auto& rep = result.report;
  json j;
  j["scheme"] = to_string(manifest.scheme);
  j["N"] = manifest.size;
  j["iterations"] = rep.iterations;
  j["wall_time"] = rep.wall_time;
  j["final_residual"] =
      rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
  j["primal_energy"] = result.primal_energy_history.empty()
                           ? 0.0
                           : result.primal_energy_history.back();
  j["dual_energy"] = result.dual_energy_history.empty()
                         ? 0.0
                         : result.dual_energy_history.back();
  j["terminated"] = to_string(rep.terminated);
  json cfg;
  std::istringstream lines(render_manifest(manifest));
  std::string line;
  while (std::getline(lines, line)) {
    auto eq = line.find('=');
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  j["config"] = cfg;
  os << j.dump(2) << '\n';
}

}  // namespace saddle
