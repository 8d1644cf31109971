#include <fstream>
#include <sstream>

#include "clobs/simulation.hpp"

namespace clobs {

namespace {

void append_indexed(std::ostringstream& os, const char* name, std::size_t count) {
  for (std::size_t i = 1; i <= count; ++i) os << ',' << name << i;
}

void append_values(std::string& line, const Vec& v) {
  for (double x : v.values()) {
    line += ',';
    line += format_number(x);
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string trajectory_header(std::size_t n, std::size_t param_count) {
  std::ostringstream os;
  os << 't';
  append_indexed(os, "p", n);
  append_indexed(os, "q", n);
  append_indexed(os, "p_hat", n);
  append_indexed(os, "q_hat", n);
  append_indexed(os, "theta_hat", param_count);
  os << ",x_tilde_norm,theta_tilde_norm,smin_main,smin_transient,gamma_eig_min,gamma_eig_max";
  append_indexed(os, "u", n);
  return os.str();
}

void write_run_log(const RunLog& log, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const std::size_t n = log.records.empty() ? 2 : log.records.front().p.size();
  const std::size_t params = log.records.empty() ? 4 : log.records.front().theta_hat.size();
  std::string trajectory = trajectory_header(n, params) + '\n';
  for (const auto& r : log.records) {
    std::string line = format_number(r.t);
    append_values(line, r.p);
    append_values(line, r.q);
    append_values(line, r.p_hat);
    append_values(line, r.q_hat);
    append_values(line, r.theta_hat);
    for (double v : {r.x_tilde_norm, r.theta_tilde_norm, r.smin_main, r.smin_transient,
                     r.gamma_eig_min, r.gamma_eig_max}) {
      line += ',';
      line += format_number(v);
    }
    append_values(line, r.u);
    trajectory += line;
    trajectory += '\n';
  }
  write_file(dir / "trajectory.csv", trajectory);

  std::string events = "time,event,detail\n";
  for (const auto& e : log.events) {
    events += format_number(e.time);
    events += ',';
    events += to_string(e.kind);
    events += ',';
    if (e.slot) events += "slot=" + std::to_string(*e.slot) + ' ';
    events += "smin_before=" + format_number(e.smin_before) +
              " smin_after=" + format_number(e.smin_after);
    events += '\n';
  }
  write_file(dir / "events.csv", events);

  std::string meta;
  for (const auto& [key, value] : log.metadata) meta += key + " = " + value + '\n';
  const RunSummary& s = log.summary;
  meta += "status = " + std::string(log.completed ? "completed" : "halted") + '\n';
  if (!log.completed) meta += "diagnostic = " + log.diagnostic + '\n';
  meta += "steps_completed = " + std::to_string(s.steps_completed) + '\n';
  meta += "purge_count = " + std::to_string(s.purge_count) + '\n';
  meta += "gamma_bound_violations = " + std::to_string(s.gamma_bound_violations) + '\n';
  meta += "gamma_eig_min_seen = " + format_number(s.gamma_eig_min_seen) + '\n';
  meta += "gamma_eig_max_seen = " + format_number(s.gamma_eig_max_seen) + '\n';
  meta += "max_input_norm = " + format_number(s.max_input_norm) + '\n';
  meta += "final_theta_tilde_norm = " + format_number(s.final_theta_tilde_norm) + '\n';
  meta += "final_x_tilde_norm = " + format_number(s.final_x_tilde_norm) + '\n';
  write_file(dir / "meta.txt", meta);
}

}  // namespace clobs
