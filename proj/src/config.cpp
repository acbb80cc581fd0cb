#include "heatwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <vector>

#include <fmt/format.h>

#include "heatwave/cases.hpp"
#include "heatwave/error.hpp"

namespace heatwave {

namespace {

struct Entry {
  std::string value;
  int line;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "domain", "n_cells", "cfl",        "t_end",          "gamma",
      "c_v",    "kappa",   "K",          "tau",            "scheme",
      "limiter", "bc",     "relaxation", "reconstruction", "ic",
      "output_times"};
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const Entry& e,
                            const std::string& expected) {
  throw ConfigError(fmt::format("line {}: cannot parse {} = '{}' (expected {})",
                                e.line, key, e.value, expected));
}

double to_double(const std::string& key, const Entry& e, const std::string& tok) {
  const std::string t = trim(tok);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    bad_value(key, e, "a number");
  }
  return v;
}

std::vector<double> to_list(const std::string& key, const Entry& e,
                            const std::string& s) {
  std::string norm = s;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < norm.size()) {
    const auto b = norm.find_first_not_of(" \t", pos);
    if (b == std::string::npos) break;
    const auto end = norm.find_first_of(" \t", b);
    out.push_back(to_double(key, e, norm.substr(b, end - b)));
    pos = end == std::string::npos ? norm.size() : end;
  }
  return out;
}

int to_int(const std::string& key, const Entry& e) {
  const std::string t = trim(e.value);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    bad_value(key, e, "an integer");
  }
  return v;
}

PressureState to_state(const std::string& key, const Entry& e,
                       const std::string& s) {
  const std::vector<double> v = to_list(key, e, s);
  if (v.size() != 4) bad_value(key, e, "rho,u,p,j");
  return {v[0], v[1], v[2], v[3]};
}

template <class T>
T choose(const std::string& key, const Entry& e,
         std::initializer_list<std::pair<const char*, T>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (e.value == name) return value;
    if (!names.empty()) names += " or ";
    names += name;
  }
  bad_value(key, e, names);
}

}  // namespace

ParsedRun parse_run_config(std::istream& in, const std::string& fallback_name) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(
          fmt::format("line {}: expected 'key = value', got '{}'", line, s));
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!known_keys().count(key)) {
      throw ConfigError(fmt::format("line {}: unknown key '{}'", line, key));
    }
    if (entries.count(key)) {
      throw ConfigError(
          fmt::format("line {}: duplicate key '{}' (first on line {})", line,
                      key, entries[key].line));
    }
    entries[key] = {value, line};
  }

  ParsedRun out{fallback_name, RunConfig{}};
  RunConfig& c = out.config;
  c.model.tau_policy = TauPolicy::asymptotic;

  if (auto it = entries.find("ic"); it != entries.end()) {
    const Entry& e = it->second;
    const auto colon = e.value.find(':');
    if (colon == std::string::npos) {
      const auto names = case_names();
      if (std::find(names.begin(), names.end(), e.value) == names.end()) {
        bad_value("ic", e, "a case name or 'x_s: rho,u,p,j | rho,u,p,j'");
      }
      c = case_config(e.value);
      out.name = e.value;
    } else {
      const double xs = to_double("ic", e, e.value.substr(0, colon));
      const std::string states = e.value.substr(colon + 1);
      const auto bar = states.find('|');
      if (bar == std::string::npos) {
        bad_value("ic", e, "'x_s: rho,u,p,j | rho,u,p,j'");
      }
      c.initial = RiemannInitial{xs, to_state("ic", e, states.substr(0, bar)),
                                 to_state("ic", e, states.substr(bar + 1))};
    }
  }

  for (const auto& [key, e] : entries) {
    if (key == "ic") continue;
    if (key == "domain") {
      const auto v = to_list(key, e, e.value);
      if (v.size() != 2) bad_value(key, e, "two numbers");
      c.x_left = v[0];
      c.x_right = v[1];
    } else if (key == "n_cells") {
      c.n_cells = to_int(key, e);
    } else if (key == "cfl") {
      c.cfl = to_double(key, e, e.value);
    } else if (key == "t_end") {
      c.t_end = to_double(key, e, e.value);
      if (!entries.count("output_times")) {
        std::erase_if(c.output_times, [&](double t) { return t > c.t_end; });
      }
    } else if (key == "gamma") {
      c.model.gas.gamma = to_double(key, e, e.value);
    } else if (key == "c_v") {
      c.model.gas.c_v = to_double(key, e, e.value);
    } else if (key == "kappa") {
      c.model.kappa = to_double(key, e, e.value);
    } else if (key == "K") {
      c.model.K = to_double(key, e, e.value);
    } else if (key == "tau") {
      if (e.value == "asymptotic") {
        c.model.tau_policy = TauPolicy::asymptotic;
      } else {
        c.model.tau_policy = TauPolicy::constant;
        c.model.tau0 = to_double(key, e, e.value);
      }
    } else if (key == "scheme") {
      c.scheme = choose<Scheme>(key, e,
                                {{"hyperbolic", Scheme::hyperbolic},
                                 {"euler_fourier", Scheme::euler_fourier}});
    } else if (key == "limiter") {
      c.limiter = choose<Limiter>(
          key, e, {{"minmod", Limiter::minmod}, {"none", Limiter::none}});
    } else if (key == "bc") {
      c.bc = choose<Boundary>(key, e,
                              {{"transmissive", Boundary::transmissive},
                               {"periodic", Boundary::periodic}});
    } else if (key == "reconstruction") {
      c.reconstruction = choose<ReconstructionVars>(
          key, e,
          {{"conserved", ReconstructionVars::conserved},
           {"primitive", ReconstructionVars::primitive}});
    } else if (key == "relaxation") {
      c.model.relaxation = choose<bool>(
          key, e, {{"on", true}, {"off", false}, {"true", true}, {"false", false}});
    } else if (key == "output_times") {
      c.output_times = to_list(key, e, e.value);
    }
  }
  return out;
}

}  // namespace heatwave
