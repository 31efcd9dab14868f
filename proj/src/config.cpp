#include "bardina/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bardina/errors.hpp"

namespace bardina {

namespace pt = boost::property_tree;

namespace {

std::string field_name(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

double to_double(const std::string& section, const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError(field_name(section, key), "'" + s + "' is not a number");
  return v;
}

template <class Int>
Int to_integer(const std::string& section, const std::string& key, const std::string& s) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(field_name(section, key), "'" + s + "' is not an integer");
  }
  return v;
}

std::vector<double> to_list(const std::string& section, const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError(field_name(section, key), "empty list entry");
    out.push_back(to_double(section, key, item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ConfigError(field_name(section, key), "list is empty");
  return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"spectral", {"n", "box_len", "dealias_fraction"}},
      {"params", {"alpha", "beta", "nu", "eta_c"}},
      {"initial", {"kind", "amplitude", "seed", "k_min", "k_max"}},
      {"initial_b", {"kind", "amplitude", "seed", "k_min", "k_max"}},
      {"force", {"kind", "amplitude", "seed", "k_min", "k_max"}},
      {"force_b", {"kind", "amplitude", "seed", "k_min", "k_max"}},
      {"dynamics", {"dt", "t_end", "sample_every"}},
      {"stationary", {"tol", "omega", "max_iter"}},
      {"attractor", {"m", "frame_seed", "p_list", "decay_mode"}},
  };
  return keys;
}

void read_recipe(const pt::ptree& sec, const std::string& name, FieldRecipe& r) {
  for (const auto& [key, node] : sec) {
    const std::string v = node.data();
    if (key == "kind") {
      try {
        r.kind = parse_field_kind(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field_name(name, key), e.what());
      }
    } else if (key == "amplitude") {
      r.amplitude = to_double(name, key, v);
    } else if (key == "seed") {
      r.seed = to_integer<std::uint64_t>(name, key, v);
    } else if (key == "k_min") {
      r.k_min = to_integer<int>(name, key, v);
    } else if (key == "k_max") {
      r.k_max = to_integer<int>(name, key, v);
    }
  }
}

void validate_recipe(const FieldRecipe& r, const std::string& name, const GridSpec& grid) {
  if (!std::isfinite(r.amplitude)) throw ConfigError(field_name(name, "amplitude"), "must be finite");
  if (r.kind == FieldKind::random_band) {
    if (r.k_min < 0) throw ConfigError(field_name(name, "k_min"), "must be >= 0");
    if (r.k_max < r.k_min) throw ConfigError(field_name(name, "k_max"), "must be >= k_min");
    if (!(r.k_max < grid.cutoff())) {
      throw ConfigError(field_name(name, "k_max"), "must lie below the dealias cutoff " + format_double(grid.cutoff()));
    }
  }
}

void write_recipe(std::ostream& os, const std::string& name, const FieldRecipe& r) {
  os << "\n[" << name << "]\n"
     << "kind = " << to_string(r.kind) << "\n"
     << "amplitude = " << format_double(r.amplitude) << "\n"
     << "seed = " << r.seed << "\n"
     << "k_min = " << r.k_min << "\n"
     << "k_max = " << r.k_max << "\n";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

void RunConfig::validate() const {
  if (grid.n < 4 || grid.n % 2 != 0) throw ConfigError("[spectral] n", "must be even and >= 4");
  if (!(grid.box_len > 0.0) || !std::isfinite(grid.box_len)) throw ConfigError("[spectral] box_len", "must be > 0");
  if (!(grid.dealias_fraction > 0.0 && grid.dealias_fraction <= 1.0)) {
    throw ConfigError("[spectral] dealias_fraction", "must lie in (0, 1]");
  }
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(params.alpha)) throw ConfigError("[params] alpha", "must be > 0");
  if (!positive(params.beta)) throw ConfigError("[params] beta", "must be > 0");
  if (!positive(params.nu)) throw ConfigError("[params] nu", "must be > 0");
  if (!positive(params.eta_c)) throw ConfigError("[params] eta_c", "must be > 0");
  validate_recipe(initial, "initial", grid);
  validate_recipe(initial_b, "initial_b", grid);
  validate_recipe(force, "force", grid);
  validate_recipe(force_b, "force_b", grid);
  if (!positive(dt)) throw ConfigError("[dynamics] dt", "must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("[dynamics] t_end", "must be >= 0");
  if (sample_every < 1) throw ConfigError("[dynamics] sample_every", "must be >= 1");
  if (!positive(stationary.tol)) throw ConfigError("[stationary] tol", "must be > 0");
  if (!(stationary.omega > 0.0 && stationary.omega <= 1.0)) throw ConfigError("[stationary] omega", "must lie in (0, 1]");
  if (stationary.max_iter < 1) throw ConfigError("[stationary] max_iter", "must be >= 1");
  if (frame_m < 1) throw ConfigError("[attractor] m", "must be >= 1");
  for (double p : p_list) {
    if (!(std::isinf(p) && p > 0) && !(p >= 1.0 && std::isfinite(p))) {
      throw ConfigError("[attractor] p_list", "entries must be >= 1 or inf");
    }
  }
  if (decay_mode != "zero_force" && decay_mode != "steady") {
    throw ConfigError("[attractor] decay_mode", "must be zero_force or steady");
  }
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("[file] line " + std::to_string(e.line()), e.message());
  }
  RunConfig cfg;
  const auto& known = known_keys();
  for (const auto& [section, sec] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) {
      if (sec.empty()) throw ConfigError(field_name("", section), "key outside of any section");
      throw ConfigError("[" + section + "]", "unknown section");
    }
    for (const auto& [key, node] : sec) {
      if (!it->second.contains(key)) throw ConfigError(field_name(section, key), "unknown key");
      const std::string v = node.data();
      if (section == "spectral") {
        if (key == "n") cfg.grid.n = to_integer<int>(section, key, v);
        if (key == "box_len") cfg.grid.box_len = to_double(section, key, v);
        if (key == "dealias_fraction") cfg.grid.dealias_fraction = to_double(section, key, v);
      } else if (section == "params") {
        if (key == "alpha") cfg.params.alpha = to_double(section, key, v);
        if (key == "beta") cfg.params.beta = to_double(section, key, v);
        if (key == "nu") cfg.params.nu = to_double(section, key, v);
        if (key == "eta_c") cfg.params.eta_c = to_double(section, key, v);
      } else if (section == "dynamics") {
        if (key == "dt") cfg.dt = to_double(section, key, v);
        if (key == "t_end") cfg.t_end = to_double(section, key, v);
        if (key == "sample_every") cfg.sample_every = to_integer<int>(section, key, v);
      } else if (section == "stationary") {
        if (key == "tol") cfg.stationary.tol = to_double(section, key, v);
        if (key == "omega") cfg.stationary.omega = to_double(section, key, v);
        if (key == "max_iter") cfg.stationary.max_iter = to_integer<int>(section, key, v);
      } else if (section == "attractor") {
        if (key == "m") cfg.frame_m = to_integer<int>(section, key, v);
        if (key == "frame_seed") cfg.frame_seed = to_integer<std::uint64_t>(section, key, v);
        if (key == "p_list") cfg.p_list = to_list(section, key, v);
        if (key == "decay_mode") cfg.decay_mode = v;
      }
    }
    if (section == "initial") read_recipe(sec, section, cfg.initial);
    if (section == "initial_b") read_recipe(sec, section, cfg.initial_b);
    if (section == "force") read_recipe(sec, section, cfg.force);
    if (section == "force_b") read_recipe(sec, section, cfg.force_b);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("[file] " + path.string(), "cannot be opened");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[spectral]\n"
     << "n = " << c.grid.n << "\n"
     << "box_len = " << format_double(c.grid.box_len) << "\n"
     << "dealias_fraction = " << format_double(c.grid.dealias_fraction) << "\n";
  os << "\n[params]\n"
     << "alpha = " << format_double(c.params.alpha) << "\n"
     << "beta = " << format_double(c.params.beta) << "\n"
     << "nu = " << format_double(c.params.nu) << "\n"
     << "eta_c = " << format_double(c.params.eta_c) << "\n";
  write_recipe(os, "initial", c.initial);
  write_recipe(os, "initial_b", c.initial_b);
  write_recipe(os, "force", c.force);
  write_recipe(os, "force_b", c.force_b);
  os << "\n[dynamics]\n"
     << "dt = " << format_double(c.dt) << "\n"
     << "t_end = " << format_double(c.t_end) << "\n"
     << "sample_every = " << c.sample_every << "\n";
  os << "\n[stationary]\n"
     << "tol = " << format_double(c.stationary.tol) << "\n"
     << "omega = " << format_double(c.stationary.omega) << "\n"
     << "max_iter = " << c.stationary.max_iter << "\n";
  os << "\n[attractor]\n"
     << "m = " << c.frame_m << "\n"
     << "frame_seed = " << c.frame_seed << "\n"
     << "p_list = ";
  for (std::size_t i = 0; i < c.p_list.size(); ++i) os << (i ? ", " : "") << format_double(c.p_list[i]);
  os << "\n"
     << "decay_mode = " << c.decay_mode << "\n";
  return os.str();
}

}  // namespace bardina
