#include "fracbubble/runconfig.hpp"

#include <fstream>
#include <sstream>

namespace fracbubble {

std::string RunConfig::describe() const {
  std::ostringstream os;
  os << "n=" << N << " s=" << s << " m=" << (m > 0 ? m : 0.75 * (N - 2.0 * s))
     << " c0=" << c0 << " r0=" << r0 << " delta=" << delta << " theta=" << theta_box
     << " k=" << k << " tau=" << tau << " h=" << h << " tol=" << tol << " level=" << level;
  return os.str();
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key/value");
    try {
      if (key == "n") cfg.N = std::stoi(val);
      else if (key == "s") cfg.s = std::stod(val);
      else if (key == "m") cfg.m = std::stod(val);
      else if (key == "c0") cfg.c0 = std::stod(val);
      else if (key == "r0") cfg.r0 = std::stod(val);
      else if (key == "delta") cfg.delta = std::stod(val);
      else if (key == "theta") cfg.theta_box = std::stod(val);
      else if (key == "tau") cfg.tau = std::stod(val);
      else if (key == "k") cfg.k = std::stoi(val);
      else if (key == "h") cfg.h = std::stod(val);
      else if (key == "tol") cfg.tol = std::stod(val);
      else if (key == "level") cfg.level = std::stoi(val);
      else if (key == "ball_delta") cfg.ball_delta = std::stod(val);
      else if (key == "which") cfg.which = val;
      else if (key == "out") cfg.out = val;
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value for " +
                                  key);
    }
  }
}

}  // namespace fracbubble
