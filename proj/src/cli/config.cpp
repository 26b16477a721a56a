#include "cgwave/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cgwave::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"physics", {"g", "sigma", "h", "k", "p_atm"}},
      {"discretization", {"n_modes", "m_y"}},
      {"continuation", {"s_max", "steps", "tol", "max_iter"}},
      {"dispersion", {"k_min", "k_max", "k_count"}},
      {"kernel", {"n_max", "tol"}},
      {"output", {"dir"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Locates `key` inside `[section]` by scanning the raw text; property trees
// do not keep line numbers.
int find_line(std::string_view text, const std::string& section, const std::string& key) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string current;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(std::string_view(t).substr(1, t.size() - 2));
      if (key.empty() && current == section) return n;
      continue;
    }
    if (current != section || key.empty()) continue;
    const auto eq = t.find('=');
    if (eq != std::string::npos && trim(std::string_view(t).substr(0, eq)) == key) return n;
  }
  return 0;
}

std::string where(const std::string& source, int line) {
  return line > 0 ? source + ":" + std::to_string(line) + ": " : source + ": ";
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string_view text, const std::string& source)
      : tree_(tree), text_(text), source_(source) {}

  template <class T>
  void read(const std::string& section, const std::string& key, T& target) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return;
    const auto node = sec->get_child_optional(key);
    if (!node) return;
    const std::string raw = trim(node->data());
    const int line = find_line(text_, section, key);
    try {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, std::string>) {
        target = raw;
        used = raw.size();
      } else if constexpr (std::is_same_v<T, int>) {
        target = std::stoi(raw, &used);
      } else {
        target = std::stod(raw, &used);
      }
      if (used != raw.size() || raw.empty()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError(where(source_, line) + "[" + section + "] " + key +
                            ": cannot parse value '" + raw + "'",
                        line);
    }
  }

  void read(const std::string& section, const std::string& key, std::optional<double>& target) const {
    double v = 0.0;
    const auto sec = tree_.get_child_optional(section);
    if (!sec || !sec->get_child_optional(key)) return;
    read(section, key, v);
    target = v;
  }

 private:
  const pt::ptree& tree_;
  std::string_view text_;
  const std::string& source_;
};

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(where(source, static_cast<int>(e.line())) + e.message(),
                      static_cast<int>(e.line()));
  }

  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) {
      const int line = find_line(text, section, "");
      throw ConfigError(where(source, line) + "unknown section [" + section + "]", line);
    }
    if (!body.data().empty() && body.empty()) {
      const int line = find_line(text, section, "");
      throw ConfigError(where(source, line) + "key '" + section + "' outside any section", line);
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        const int line = find_line(text, section, key);
        throw ConfigError(where(source, line) + "unknown key '" + key + "' in [" + section + "]",
                          line);
      }
    }
  }

  RunConfig c;
  const Reader r(tree, text, source);
  r.read("physics", "g", c.physics.g);
  r.read("physics", "sigma", c.physics.sigma);
  r.read("physics", "h", c.physics.h);
  r.read("physics", "k", c.physics.k);
  r.read("physics", "p_atm", c.physics.p_atm);
  r.read("discretization", "n_modes", c.n_modes);
  r.read("discretization", "m_y", c.m_y);
  r.read("continuation", "s_max", c.s_max);
  r.read("continuation", "steps", c.steps);
  r.read("continuation", "tol", c.tol);
  r.read("continuation", "max_iter", c.max_iter);
  r.read("dispersion", "k_min", c.k_min);
  r.read("dispersion", "k_max", c.k_max);
  r.read("dispersion", "k_count", c.k_count);
  r.read("kernel", "n_max", c.kernel_n_max);
  r.read("kernel", "tol", c.kernel_tol);
  r.read("output", "dir", c.out_dir);

  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what(), e.line());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void validate_config(const RunConfig& c) {
  try {
    c.physics.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[physics] ") + e.what());
  }
  const auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.n_modes >= 1, "[discretization] n_modes must be >= 1");
  require(c.m_y >= 2, "[discretization] m_y must be >= 2");
  require(std::isfinite(c.effective_s_max()), "[continuation] s_max must be finite");
  require(c.steps >= 1, "[continuation] steps must be >= 1");
  require(c.tol > 0.0, "[continuation] tol must be > 0");
  require(c.max_iter >= 1, "[continuation] max_iter must be >= 1");
  require(c.k_min > 0.0 && std::isfinite(c.k_min), "[dispersion] k_min must be > 0");
  require(c.k_max >= c.k_min && std::isfinite(c.k_max), "[dispersion] k_max must be >= k_min");
  require(c.k_count >= 1, "[dispersion] k_count must be >= 1");
  require(c.kernel_n_max >= 2, "[kernel] n_max must be >= 2");
  require(c.kernel_tol > 0.0, "[kernel] tol must be > 0");
  require(!c.out_dir.empty(), "[output] dir must not be empty");
}

}  // namespace cgwave::cli
