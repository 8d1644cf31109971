#include "clobs/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "clobs/signal_windows.hpp"

namespace clobs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: '" + std::string(key) + "' expects a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("config: '" + std::string(key) + "' expects true or false, got '" +
                    std::string(text) + "'");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

double RunConfig::resolved_k_theta() const {
  return k_theta.value_or(0.5 / static_cast<double>(stack_capacity));
}

double RunConfig::resolved_dwell_time() const { return dwell_time.value_or(2.0 * (tau1 + tau2)); }

void RunConfig::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(std::string("config: ") + msg);
  };
  require(sample_period > 0.0, "sample_period must be > 0");
  require(tau1 > 0.0 && tau2 > 0.0, "tau1 and tau2 must be > 0");
  require(stack_capacity > 0, "stack_capacity must be > 0");
  require(candidate_period > 0.0, "candidate_period must be > 0");
  require(gamma0_scale > 0.0, "gamma0_scale must be > 0");
  require(beta1 >= 0.0, "beta1 must be >= 0");
  require(resolved_k_theta() > 0.0, "k_theta must be > 0");
  require(gamma_min >= 0.0 && gamma_min <= gamma_max, "need 0 <= gamma_min <= gamma_max");
  require(alpha > 0.0 && k > 0.0 && beta > 0.0, "alpha, k and beta must be > 0");
  require(zeta >= 0.0, "zeta must be >= 0");
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  require(resolved_dwell_time() >= 0.0, "dwell_time must be >= 0");
  require(c_lower > 0.0, "c_lower must be > 0");
  require(duration >= 0.0, "duration must be >= 0");
  require(noise_variance >= 0.0, "noise_variance must be >= 0");
  require(log_decimation > 0, "log_decimation must be > 0");
  try {
    whole_multiple(tau1, sample_period, "tau1");
    whole_multiple(tau2, sample_period, "tau2");
    whole_multiple(candidate_period, sample_period, "candidate_period");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto num = [&] { return parse_double(key, value); };
  if (key == "tau1") tau1 = num();
  else if (key == "tau2") tau2 = num();
  else if (key == "stack_capacity") stack_capacity = parse_unsigned(key, value);
  else if (key == "candidate_period") candidate_period = num();
  else if (key == "gamma0_scale") gamma0_scale = num();
  else if (key == "beta1") beta1 = num();
  else if (key == "k_theta") k_theta = num();
  else if (key == "gamma_min") gamma_min = num();
  else if (key == "gamma_max") gamma_max = num();
  else if (key == "gamma_reset_on_purge") gamma_reset_on_purge = parse_bool(key, value);
  else if (key == "alpha") alpha = num();
  else if (key == "k") k = num();
  else if (key == "beta") beta = num();
  else if (key == "zeta") zeta = num();
  else if (key == "xi") xi = num();
  else if (key == "dwell_time") dwell_time = num();
  else if (key == "c_lower") c_lower = num();
  else if (key == "init_stack_full_rank") init_stack_full_rank = parse_bool(key, value);
  else if (key == "purge_requires_full_stack") purge_requires_full_stack = parse_bool(key, value);
  else if (key == "sample_period") sample_period = num();
  else if (key == "duration") duration = num();
  else if (key == "noise_variance") noise_variance = num();
  else if (key == "seed") seed = parse_unsigned(key, value);
  else if (key == "kp") kp = num();
  else if (key == "kd") kd = num();
  else if (key == "log_decimation") log_decimation = parse_unsigned(key, value);
  else if (key == "truth_integrator") {
    if (value == "euler") truth_integrator = TruthIntegrator::kEuler;
    else if (value == "rk4") truth_integrator = TruthIntegrator::kRk4;
    else throw ConfigError("config: truth_integrator must be euler or rk4");
  } else {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {
      {"tau1", format_number(tau1)},
      {"tau2", format_number(tau2)},
      {"stack_capacity", std::to_string(stack_capacity)},
      {"candidate_period", format_number(candidate_period)},
      {"gamma0_scale", format_number(gamma0_scale)},
      {"beta1", format_number(beta1)},
      {"k_theta", format_number(resolved_k_theta())},
      {"gamma_min", format_number(gamma_min)},
      {"gamma_max", format_number(gamma_max)},
      {"gamma_reset_on_purge", bool_text(gamma_reset_on_purge)},
      {"alpha", format_number(alpha)},
      {"k", format_number(k)},
      {"beta", format_number(beta)},
      {"zeta", format_number(zeta)},
      {"xi", format_number(xi)},
      {"dwell_time", format_number(resolved_dwell_time())},
      {"c_lower", format_number(c_lower)},
      {"init_stack_full_rank", bool_text(init_stack_full_rank)},
      {"purge_requires_full_stack", bool_text(purge_requires_full_stack)},
      {"sample_period", format_number(sample_period)},
      {"duration", format_number(duration)},
      {"noise_variance", format_number(noise_variance)},
      {"seed", std::to_string(seed)},
      {"kp", format_number(kp)},
      {"kd", format_number(kd)},
      {"truth_integrator", truth_integrator == TruthIntegrator::kEuler ? "euler" : "rk4"},
      {"log_decimation", std::to_string(log_decimation)},
  };
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace clobs
