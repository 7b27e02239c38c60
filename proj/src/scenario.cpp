#include "fluctoforce/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace fluct {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Key/value store that tracks which keys were consumed, so leftovers can be
// rejected wholesale.
class KeyTable {
 public:
  void insert(const std::string& key, const std::string& value, int line) {
    if (entries_.count(key)) {
      throw ConfigError("duplicate key '" + key + "' (line " + std::to_string(line) + ")");
    }
    entries_[key] = {value, false};
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const std::string* take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
  }

  std::string require(const std::string& key) {
    const std::string* v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  }

  void reject_unused() const {
    std::string unknown;
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) throw ConfigError("unknown key(s): " + unknown);
  }

 private:
  struct Entry {
    std::string value;
    bool used = false;
  };
  std::map<std::string, Entry> entries_;
};

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || t.empty()) {
    throw ConfigError("key '" + key + "': cannot parse number from '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw ConfigError("key '" + key + "': expected an integer");
  return i;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false");
}

OscillatorModel parse_oscillator(KeyTable& keys, const std::string& prefix) {
  OscillatorModel o;
  o.low_strength = parse_double(prefix + ".low_strength", keys.require(prefix + ".low_strength"));
  o.low_omega = parse_double(prefix + ".low_omega", keys.require(prefix + ".low_omega"));
  o.low_damping = parse_double(prefix + ".low_damping", keys.require(prefix + ".low_damping"));
  o.core_strength =
      parse_double(prefix + ".core_strength", keys.require(prefix + ".core_strength"));
  o.core_omega = parse_double(prefix + ".core_omega", keys.require(prefix + ".core_omega"));
  o.core_damping = parse_double(prefix + ".core_damping", keys.require(prefix + ".core_damping"));
  if (const std::string* v = keys.take(prefix + ".dilution")) {
    o.dilution = parse_double(prefix + ".dilution", *v);
  }
  return o;
}

Material parse_material(KeyTable& keys, const std::string& prefix) {
  const std::string type = trim(keys.require(prefix + ".type"));
  try {
    if (type == "vacuum") return Material::vacuum();
    if (type == "lorentz_drude") return Material::lorentz_drude(parse_oscillator(keys, prefix));
    if (type == "maxwell_garnett") {
      const double phi = parse_double(prefix + ".porosity", keys.require(prefix + ".porosity"));
      return Material::maxwell_garnett(parse_oscillator(keys, prefix + ".host"), phi);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + ": " + e.what());
  }
  throw ConfigError(prefix + ".type: unknown material type '" + type + "'");
}

LayeredSlab parse_slab(KeyTable& keys, const std::string& prefix) {
  LayeredSlab slab;
  slab.layer = parse_material(keys, prefix + ".layer");
  slab.thickness = parse_double(prefix + ".thickness", keys.require(prefix + ".thickness"));
  slab.substrate = parse_material(keys, prefix + ".substrate");
  if (const std::string* v = keys.take(prefix + ".blackened")) {
    slab.outer_face_blackened = parse_bool(prefix + ".blackened", *v);
  }
  return slab;
}

SystemConfig parse_system(KeyTable& keys) {
  SystemConfig cfg;
  cfg.slab1 = parse_slab(keys, "slab1");
  cfg.slab2 = parse_slab(keys, "slab2");
  cfg.gap = parse_double("system.gap", keys.require("system.gap"));
  cfg.T1 = parse_double("system.T1", keys.require("system.T1"));
  cfg.T2 = parse_double("system.T2", keys.require("system.T2"));
  cfg.T_env = parse_double("system.T_env", keys.require("system.T_env"));
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  return cfg;
}

std::vector<double> parse_sweep_values(KeyTable& keys) {
  if (const std::string* list = keys.take("sweep.values")) {
    std::vector<double> out;
    std::stringstream ss(*list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double("sweep.values", item));
    if (out.empty()) throw ConfigError("sweep.values: empty list");
    return out;
  }
  const double lo = parse_double("sweep.min", keys.require("sweep.min"));
  const double hi = parse_double("sweep.max", keys.require("sweep.max"));
  const int n = parse_int("sweep.count", keys.require("sweep.count"));
  std::string spacing = "linear";
  if (const std::string* v = keys.take("sweep.spacing")) spacing = trim(*v);
  if (n < 2 || !(lo < hi)) throw ConfigError("sweep: requires min < max and count >= 2");
  std::vector<double> out(n);
  if (spacing == "linear") {
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  } else if (spacing == "log") {
    if (!(lo > 0.0)) throw ConfigError("sweep: log spacing requires min > 0");
    for (int i = 0; i < n; ++i) out[i] = lo * std::exp(std::log(hi / lo) * i / (n - 1));
  } else {
    throw ConfigError("sweep.spacing: expected linear or log");
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void parse_solver(KeyTable& keys, SolverOptions& opt) {
  if (const std::string* v = keys.take("quadrature.rel_tol")) {
    opt.rel_tol = parse_double("quadrature.rel_tol", *v);
  }
  if (const std::string* v = keys.take("quadrature.abs_tol")) {
    opt.abs_tol = parse_double("quadrature.abs_tol", *v);
  }
  if (const std::string* v = keys.take("quadrature.max_subdivisions")) {
    opt.max_subdivisions = parse_int("quadrature.max_subdivisions", *v);
  }
  if (const std::string* v = keys.take("matsubara.rel_tail_tol")) {
    opt.matsubara_tail_tol = parse_double("matsubara.rel_tail_tol", *v);
  }
  if (!(opt.rel_tol > 0.0) || opt.abs_tol < 0.0 || opt.max_subdivisions < 1 ||
      !(opt.matsubara_tail_tol > 0.0)) {
    throw ConfigError("quadrature: invalid tolerance settings");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_oscillator(std::ostream& os, const std::string& prefix, const OscillatorModel& o) {
  os << prefix << ".low_strength = " << format_double(o.low_strength) << "\n";
  os << prefix << ".low_omega = " << format_double(o.low_omega) << "\n";
  os << prefix << ".low_damping = " << format_double(o.low_damping) << "\n";
  os << prefix << ".core_strength = " << format_double(o.core_strength) << "\n";
  os << prefix << ".core_omega = " << format_double(o.core_omega) << "\n";
  os << prefix << ".core_damping = " << format_double(o.core_damping) << "\n";
  os << prefix << ".dilution = " << format_double(o.dilution) << "\n";
}

void emit_material(std::ostream& os, const std::string& prefix, const Material& m) {
  switch (m.kind()) {
    case MaterialKind::Vacuum:
      os << prefix << ".type = vacuum\n";
      break;
    case MaterialKind::LorentzDrude:
      os << prefix << ".type = lorentz_drude\n";
      emit_oscillator(os, prefix, m.oscillator());
      break;
    case MaterialKind::MaxwellGarnett:
      os << prefix << ".type = maxwell_garnett\n";
      os << prefix << ".porosity = " << format_double(m.porosity()) << "\n";
      emit_oscillator(os, prefix + ".host", m.oscillator());
      break;
  }
}

void emit_slab(std::ostream& os, const std::string& prefix, const LayeredSlab& slab) {
  emit_material(os, prefix + ".layer", slab.layer);
  os << prefix << ".thickness = " << format_double(slab.thickness) << "\n";
  emit_material(os, prefix + ".substrate", slab.substrate);
  os << prefix << ".blackened = " << (slab.outer_face_blackened ? "true" : "false") << "\n";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  KeyTable keys;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    keys.insert(key, value, lineno);
  }

  Scenario s;
  s.name = keys.require("name");
  s.command = trim(keys.require("command"));
  parse_solver(keys, s.solver);

  if (s.command == "pressure") {
    s.system = parse_system(keys);
  } else if (s.command == "sweep") {
    s.system = parse_system(keys);
    s.sweep_axis = sweep_axis_from_name(trim(keys.require("sweep.axis")));
    s.sweep_values = parse_sweep_values(keys);
  } else if (s.command == "equilibria") {
    s.system = parse_system(keys);
    s.a_min = parse_double("equilibria.a_min", keys.require("equilibria.a_min"));
    s.a_max = parse_double("equilibria.a_max", keys.require("equilibria.a_max"));
    if (const std::string* v = keys.take("equilibria.grid_points")) {
      s.grid_points = parse_int("equilibria.grid_points", *v);
    }
    if (!(s.a_min > 0.0) || !(s.a_min < s.a_max) || s.grid_points < 2) {
      throw ConfigError("equilibria: requires 0 < a_min < a_max and grid_points >= 2");
    }
  } else if (s.command == "reproduce-fig") {
    s.figure = parse_int("figure.n", keys.require("figure.n"));
    if (s.figure < 1 || s.figure > 4) throw ConfigError("figure.n: must be 1..4");
    s.substrate = parse_material(keys, "substrate");
  } else {
    throw ConfigError("command: expected pressure|sweep|equilibria|reproduce-fig, got '" +
                      s.command + "'");
  }

  keys.reject_unused();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "name = " << s.name << "\n";
  os << "command = " << s.command << "\n";

  if (s.command == "reproduce-fig") {
    os << "figure.n = " << s.figure << "\n";
    emit_material(os, "substrate", s.substrate);
  } else {
    os << "system.gap = " << format_double(s.system.gap) << "\n";
    os << "system.T1 = " << format_double(s.system.T1) << "\n";
    os << "system.T2 = " << format_double(s.system.T2) << "\n";
    os << "system.T_env = " << format_double(s.system.T_env) << "\n";
    emit_slab(os, "slab1", s.system.slab1);
    emit_slab(os, "slab2", s.system.slab2);
  }

  if (s.command == "sweep") {
    os << "sweep.axis = " << sweep_axis_name(s.sweep_axis) << "\n";
    os << "sweep.values = ";
    for (std::size_t i = 0; i < s.sweep_values.size(); ++i) {
      if (i) os << ",";
      os << format_double(s.sweep_values[i]);
    }
    os << "\n";
  }
  if (s.command == "equilibria") {
    os << "equilibria.a_min = " << format_double(s.a_min) << "\n";
    os << "equilibria.a_max = " << format_double(s.a_max) << "\n";
    os << "equilibria.grid_points = " << s.grid_points << "\n";
  }

  os << "quadrature.rel_tol = " << format_double(s.solver.rel_tol) << "\n";
  os << "quadrature.abs_tol = " << format_double(s.solver.abs_tol) << "\n";
  os << "quadrature.max_subdivisions = " << s.solver.max_subdivisions << "\n";
  os << "matsubara.rel_tail_tol = " << format_double(s.solver.matsubara_tail_tol) << "\n";
  return os.str();
}

}  // namespace fluct
