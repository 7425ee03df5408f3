#include "m2m/manifest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace m2m::cli {

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    kv[key] = val;
  }
  return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

double parse_number(const std::string& key, const std::string& val) {
  if (val == "inf" || val == "infinity") return kInfinitePower;
  try {
    std::size_t pos = 0;
    const double v = std::stod(val, &pos);
    if (pos != val.size()) throw std::invalid_argument(val);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': bad number '" + val + "'");
  }
}

}  // namespace

NetworkConfig config_from_kv(const std::map<std::string, std::string>& kv,
                             bool require_explicit) {
  NetworkConfig cfg;
  bool have_eta = false, have_po = false;
  for (const auto& [key, val] : kv) {
    const double v = parse_number(key, val);
    if (key == "lambda") cfg.lambda = v;
    else if (key == "lambda_bs") cfg.lambda_bs = v;
    else if (key == "alpha") cfg.alpha = v;
    else if (key == "p_bar_t") cfg.p_bar_t = v;
    else if (key == "p_t_max") cfg.p_t_max = v;
    else if (key == "eta") { cfg.eta = v; have_eta = true; }
    else if (key == "p_lo") cfg.p_lo = v;
    else if (key == "p_rx") cfg.p_rx = v;
    else if (key == "p_tx") cfg.p_tx = v;
    else if (key == "p_o") { cfg.p_o = v; have_po = true; }
    else if (key == "w") cfg.w = v;
    else if (key == "m_payload") cfg.m_payload = v;
    else if (key == "n0") cfg.n0 = v;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  if (require_explicit && !(have_eta && have_po))
    throw std::invalid_argument(
        "config: eta and p_o have no value in the source material and must be "
        "set explicitly (keys 'eta', 'p_o' or flags --eta, --p-o)");
  cfg.validate();
  return cfg;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string config_echo(const NetworkConfig& cfg) {
  std::string s;
  const auto add = [&](const char* k, double v) {
    s += k;
    s += '=';
    s += format_double(v);
    s += ' ';
  };
  add("lambda", cfg.lambda);
  add("lambda_bs", cfg.lambda_bs);
  add("alpha", cfg.alpha);
  add("p_bar_t", cfg.p_bar_t);
  add("p_t_max", cfg.p_t_max);
  add("eta", cfg.eta);
  add("p_lo", cfg.p_lo);
  add("p_rx", cfg.p_rx);
  add("p_tx", cfg.p_tx);
  add("p_o", cfg.p_o);
  add("w", cfg.w);
  add("m_payload", cfg.m_payload);
  add("n0", cfg.n0);
  s.pop_back();
  return s;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t RunManifest::hash() const {
  std::string all = command;
  all += '\n';
  all += config;
  all += '\n';
  all += std::to_string(seed);
  all += '\n';
  all += extra;
  return fnv1a64(all);
}

std::string RunManifest::header_block() const {
  char hashbuf[24];
  std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                static_cast<unsigned long long>(hash()));
  std::string s;
  s += "# m2m-aggregation output\n";
  s += "# command: " + command + "\n";
  s += "# config: " + config + "\n";
  s += "# seed: " + std::to_string(seed) + "\n";
  if (!extra.empty()) s += "# params: " + extra + "\n";
  s += "# manifest_hash: " + std::string(hashbuf) + "\n";
  return s;
}

}  // namespace m2m::cli
