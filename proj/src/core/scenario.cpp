#include "core/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace gradlab {

namespace {

struct KeySpec {
  const char* section;
  const char* key;
};

constexpr KeySpec kKeys[] = {
    {"geometry", "n"},          {"geometry", "R"},
    {"geometry", "warp"},       {"geometry", "k"},
    {"coefficients", "a"},      {"coefficients", "b"},
    {"coefficients", "V"},      {"coefficients", "a_modulation"},
    {"coefficients", "b_modulation"}, {"coefficients", "initial"},
    {"coefficients", "boundary"}, {"solver", "grid"},
    {"solver", "tol"},          {"solver", "max_iter"},
    {"solver", "damping_floor"}, {"solver", "ramp_steps"},
    {"solver", "tau"},          {"solver", "T"},
    {"checks", "id"},           {"checks", "case"},
    {"checks", "checks"},       {"checks", "times"},
    {"checks", "tol_check"},    {"checks", "tol_lemma"},
    {"checks", "report"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// parse errors carry line/key from the caller
struct ParseFailure {
  std::string message;
};

double to_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ParseFailure{"expected a finite number, got '" + t + "'"};
  }
  return v;
}

int to_int(const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseFailure{"expected an integer, got '" + t + "'"};
  }
  return v;
}

std::vector<double> to_doubles(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(to_double(part));
  return out;
}

Modulation to_modulation(const std::string& text) {
  const auto v = to_doubles(text);
  if (v.size() != 2) throw ParseFailure{"modulation needs 'eps,omega'"};
  return {v[0], v[1]};
}

// conservative value range of a profile over all r and t
std::pair<double, double> profile_range(const CoefficientProfile& p) {
  if (p.family == ProfileFamily::Constant) return {p.base, p.base};
  const double e = std::abs(p.modulation.eps);
  const double lo_amp = std::min(p.amp * (1.0 - e), p.amp * (1.0 + e));
  const double hi_amp = std::max(p.amp * (1.0 - e), p.amp * (1.0 + e));
  if (p.family == ProfileFamily::Tanh) {
    const double m = std::max(std::abs(lo_amp), std::abs(hi_amp));
    return {p.base - m, p.base + m};
  }
  return {p.base + std::min(0.0, lo_amp), p.base + std::max(0.0, hi_amp)};
}

const std::set<std::string>& allowed_checks(CaseTag tag) {
  static const std::set<std::string> thm1{"thm1", "lemma21", "cutoff", "diagnostics"};
  static const std::set<std::string> cor1{"thm1", "lemma21", "cutoff", "diagnostics", "cor1"};
  static const std::set<std::string> thm2{"thm2", "lemma31", "cutoff"};
  static const std::set<std::string> schr{"schrodinger", "thm1", "cutoff"};
  switch (tag) {
    case CaseTag::Thm1Case1:
    case CaseTag::Thm1Case2: return thm1;
    case CaseTag::Cor1: return cor1;
    case CaseTag::Thm2: return thm2;
    case CaseTag::Schrodinger: return schr;
  }
  return thm1;
}

void assign(Scenario& s, const std::string& section, const std::string& key, const std::string& value) {
  if (section == "geometry") {
    if (key == "n") {
      s.n = to_int(value);
    } else if (key == "R") {
      s.R = to_double(value);
    } else if (key == "warp") {
      const auto kind = parse_warp_kind(trim(value));
      if (!kind) throw ParseFailure{"unknown warp '" + trim(value) + "'"};
      s.warp.kind = *kind;
    } else if (key == "k") {
      s.warp.param = to_double(value);
    }
  } else if (section == "coefficients") {
    if (key == "a") {
      const Modulation keep = s.a.modulation;
      s.a = parse_profile(value);
      s.a.modulation = keep;
    } else if (key == "b" || key == "V") {
      const Modulation keep = s.b.modulation;
      s.b = parse_profile(value);
      s.b.modulation = keep;
      s.b_is_V = key == "V";
    } else if (key == "a_modulation") {
      s.a.modulation = to_modulation(value);
    } else if (key == "b_modulation") {
      s.b.modulation = to_modulation(value);
    } else if (key == "initial") {
      if (trim(value).empty()) {
        s.initial.reset();
      } else {
        s.initial = parse_profile(value);
      }
    } else if (key == "boundary") {
      if (trim(value).empty()) {
        s.boundary.reset();
      } else {
        s.boundary = to_double(value);
      }
    }
  } else if (section == "solver") {
    if (key == "grid") s.grid = to_int(value);
    else if (key == "tol") s.solver.tol = to_double(value);
    else if (key == "max_iter") s.solver.max_iter = to_int(value);
    else if (key == "damping_floor") s.solver.damping_floor = to_double(value);
    else if (key == "ramp_steps") s.ramp_steps = to_int(value);
    else if (key == "tau") s.tau = to_double(value);
    else if (key == "T") s.T = to_double(value);
  } else if (section == "checks") {
    if (key == "id") {
      const std::string id = trim(value);
      if (id.empty() || id.find_first_of(",\"\n") != std::string::npos) {
        throw ParseFailure{"id must be non-empty and free of commas and quotes"};
      }
      s.id = id;
    } else if (key == "case") {
      const auto tag = parse_case(trim(value));
      if (!tag) throw ParseFailure{"unknown case '" + trim(value) + "'"};
      s.case_tag = *tag;
    } else if (key == "checks") {
      s.checks.clear();
      if (!trim(value).empty()) s.checks = split(value, ',');
    } else if (key == "times") {
      s.times = to_doubles(value);
    } else if (key == "tol_check") {
      s.tol_check = to_double(value);
    } else if (key == "tol_lemma") {
      s.tol_lemma = to_double(value);
    } else if (key == "report") {
      s.report = trim(value);
    }
  }
}

bool known(const std::string& section, const std::string& key) {
  return std::any_of(std::begin(kKeys), std::end(kKeys),
                     [&](const KeySpec& k) { return section == k.section && key == k.key; });
}

bool known_section(const std::string& section) {
  return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const KeySpec& k) { return section == k.section; });
}

void config_require(bool cond, const std::string& key, const std::string& message) {
  if (!cond) throw ConfigError(0, key, message);
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_profile(const CoefficientProfile& p) {
  if (p.family == ProfileFamily::Constant) return "constant:" + format_number(p.base);
  return family_name(p.family) + ":" + format_number(p.base) + "," + format_number(p.amp) + "," +
         format_number(p.c0) + "," + format_number(p.w0);
}

CoefficientProfile parse_profile(const std::string& text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) return CoefficientProfile::constant(to_double(t));
  const std::string family = trim(t.substr(0, colon));
  const auto args = to_doubles(t.substr(colon + 1));
  if (family == "constant") {
    if (args.size() != 1) throw ParseFailure{"constant profile takes one value"};
    return CoefficientProfile::constant(args[0]);
  }
  if (family != "tanh" && family != "gaussian") throw ParseFailure{"unknown profile family '" + family + "'"};
  if (args.size() != 4) throw ParseFailure{family + " profile takes base,amp,c0,w0"};
  if (!(args[3] > 0.0)) throw ParseFailure{"profile width w0 must be > 0"};
  return family == "tanh" ? CoefficientProfile::tanh_bump(args[0], args[1], args[2], args[3])
                          : CoefficientProfile::gaussian_bump(args[0], args[1], args[2], args[3]);
}

Scenario parse_config(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::set<std::string> seen;
  std::map<std::string, int> line_of;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "", "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section)) throw ConfigError(lineno, section, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(lineno, key, "key outside of any section");
    const std::string full = section + "." + key;
    if (!known(section, key)) throw ConfigError(lineno, full, "unknown key");
    const std::string slot = key == "V" ? section + ".b" : full;
    if (!seen.insert(slot).second) throw ConfigError(lineno, full, "duplicate key");
    line_of[full] = lineno;
    if (key == "V") line_of[section + ".b"] = lineno;
    try {
      assign(s, section, key, value);
    } catch (const ParseFailure& e) {
      throw ConfigError(lineno, full, e.message);
    } catch (const Error& e) {
      throw ConfigError(lineno, full, e.what());
    }
  }
  try {
    validate_scenario(s);
  } catch (const ConfigError& e) {
    // point at the line that set the offending key, when there is one
    const auto it = line_of.find(e.key());
    if (it == line_of.end()) throw;
    const std::string what = e.what();
    const auto colon = what.find(": ");
    throw ConfigError(it->second, e.key(), colon == std::string::npos ? what : what.substr(colon + 2));
  }
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const Scenario& s) {
  std::ostringstream o;
  auto mod = [](const Modulation& m) { return format_number(m.eps) + "," + format_number(m.omega); };
  auto join = [](const auto& items, auto fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + fmt(items[i]);
    return out;
  };
  o << "[geometry]\n";
  o << "n = " << s.n << "\n";
  o << "R = " << format_number(s.R) << "\n";
  o << "warp = " << warp_name(s.warp.kind) << "\n";
  o << "k = " << format_number(s.warp.param) << "\n\n";
  o << "[coefficients]\n";
  o << "a = " << format_profile(s.a) << "\n";
  o << (s.b_is_V ? "V = " : "b = ") << format_profile(s.b) << "\n";
  o << "a_modulation = " << mod(s.a.modulation) << "\n";
  o << "b_modulation = " << mod(s.b.modulation) << "\n";
  if (s.initial) o << "initial = " << format_profile(*s.initial) << "\n";
  if (s.boundary) o << "boundary = " << format_number(*s.boundary) << "\n";
  o << "\n[solver]\n";
  o << "grid = " << s.grid << "\n";
  o << "tol = " << format_number(s.solver.tol) << "\n";
  o << "max_iter = " << s.solver.max_iter << "\n";
  o << "damping_floor = " << format_number(s.solver.damping_floor) << "\n";
  o << "ramp_steps = " << s.ramp_steps << "\n";
  o << "tau = " << format_number(s.tau) << "\n";
  o << "T = " << format_number(s.T) << "\n\n";
  o << "[checks]\n";
  o << "id = " << s.id << "\n";
  o << "case = " << case_name(s.case_tag) << "\n";
  o << "checks = " << join(s.checks, [](const std::string& x) { return x; }) << "\n";
  o << "times = " << join(s.times, [](double x) { return format_number(x); }) << "\n";
  o << "tol_check = " << format_number(s.tol_check) << "\n";
  o << "tol_lemma = " << format_number(s.tol_lemma) << "\n";
  o << "report = " << s.report << "\n";
  return o.str();
}

void set_config_value(Scenario& s, const std::string& key, const std::string& value) {
  std::string section, name;
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    section = key.substr(0, dot);
    name = key.substr(dot + 1);
    if (!known(section, name)) throw ConfigError(0, key, "unknown key");
  } else {
    int hits = 0;
    for (const auto& k : kKeys) {
      if (key == k.key) {
        section = k.section;
        ++hits;
      }
    }
    if (hits == 0) throw ConfigError(0, key, "unknown key");
    if (hits > 1) throw ConfigError(0, key, "ambiguous key, use section.key");
    name = key;
  }
  Scenario next = s;
  try {
    assign(next, section, name, value);
  } catch (const ParseFailure& e) {
    throw ConfigError(0, section + "." + name, e.message);
  } catch (const Error& e) {
    throw ConfigError(0, section + "." + name, e.what());
  }
  validate_scenario(next);
  s = std::move(next);
}

std::vector<std::string> default_checks(CaseTag tag) {
  switch (tag) {
    case CaseTag::Thm1Case1:
    case CaseTag::Thm1Case2: return {"thm1", "lemma21", "cutoff", "diagnostics"};
    case CaseTag::Cor1: return {"thm1", "cor1", "cutoff"};
    case CaseTag::Thm2: return {"thm2", "cutoff"};
    case CaseTag::Schrodinger: return {"schrodinger", "thm1"};
  }
  return {};
}

std::vector<std::string> effective_checks(const Scenario& s) {
  return s.checks.empty() ? default_checks(s.case_tag) : s.checks;
}

std::vector<double> effective_times(const Scenario& s) {
  if (!s.times.empty()) return s.times;
  return {s.T / 4.0, s.T / 2.0, s.T};
}

double effective_boundary(const Scenario& s) {
  if (s.boundary) return *s.boundary;
  const double outer = 2.0 * s.R;
  if (s.case_tag == CaseTag::Thm2 && s.initial) return s.initial->value(outer, 0.0);
  const double a = s.a.value(outer, 0.0);
  if (a != 0.0) {
    const double v = std::exp(-s.b.value(outer, 0.0) / a);
    if (std::isfinite(v) && v > 0.0) return v;
  }
  return 1.0;
}

void validate_scenario(const Scenario& s) {
  config_require(s.n >= 2, "geometry.n", "dimension must be >= 2");
  config_require(s.R > 0.0, "geometry.R", "R must be > 0");
  try {
    ModelManifold(s.n, s.warp, s.R);
  } catch (const Error& e) {
    throw ConfigError(0, "geometry.k", e.what());
  }
  config_require(s.grid >= 64, "solver.grid", "grid must have at least 64 intervals");
  config_require(s.solver.tol > 0.0, "solver.tol", "tol must be > 0");
  config_require(s.solver.max_iter >= 1, "solver.max_iter", "max_iter must be >= 1");
  config_require(s.solver.damping_floor > 0.0 && s.solver.damping_floor < 1.0, "solver.damping_floor",
                 "damping_floor must lie in (0, 1)");
  config_require(s.ramp_steps >= 1, "solver.ramp_steps", "ramp_steps must be >= 1");
  config_require(s.tau > 0.0, "solver.tau", "tau must be > 0");
  config_require(s.T > 0.0, "solver.T", "T must be > 0");
  config_require(s.tol_check >= 0.0, "checks.tol_check", "tolerance must be >= 0");
  config_require(s.tol_lemma >= 0.0, "checks.tol_lemma", "tolerance must be >= 0");
  if (s.boundary) config_require(*s.boundary > 0.0, "coefficients.boundary", "boundary value must be > 0");

  const auto& allowed = allowed_checks(s.case_tag);
  for (const auto& c : s.checks) {
    config_require(allowed.count(c) > 0, "checks.checks",
                   "check '" + c + "' does not apply to case " + case_name(s.case_tag));
  }

  const auto [a_lo, a_hi] = profile_range(s.a);
  const bool timed = s.a.time_dependent() || s.b.time_dependent();
  switch (s.case_tag) {
    case CaseTag::Thm1Case1:
      config_require(a_lo > 0.0, "coefficients.a", "thm1-case1 needs a >= 2 A1 > 0 on the ball");
      break;
    case CaseTag::Thm1Case2:
      config_require(a_hi < 0.0, "coefficients.a", "thm1-case2 needs A3 <= a <= 2 A2 < 0 on the ball");
      break;
    case CaseTag::Cor1:
      config_require(a_lo > 0.0 || a_hi < 0.0, "coefficients.a", "cor1 needs a of one strict sign");
      break;
    case CaseTag::Schrodinger:
      config_require(s.warp.kind == WarpKind::Euclidean, "geometry.warp", "schrodinger case is euclidean");
      config_require(s.a.family == ProfileFamily::Constant && s.a.base == 2.0, "coefficients.a",
                     "schrodinger case needs a = 2");
      break;
    case CaseTag::Thm2:
      for (double t : s.times) config_require(t > 0.0, "checks.times", "check times must be > 0");
      if (s.initial) {
        config_require(profile_range(*s.initial).first > 0.0, "coefficients.initial",
                       "initial condition must be positive");
      }
      break;
  }
  if (s.case_tag != CaseTag::Thm2) {
    config_require(!timed, "coefficients.a_modulation", "time modulation only applies to the thm2 case");
  }
  if (s.b_is_V) config_require(s.case_tag == CaseTag::Schrodinger, "coefficients.V", "V is only used by the schrodinger case");
}

}  // namespace gradlab
