#include "nmlkit/limits.hpp"

#include <cstdlib>
#include <sstream>

#include "nmlkit/error.hpp"

namespace nmlkit {

Limits Limits::parse(const std::string& spec, Limits base) {
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("NMLKIT_LIMITS: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(value, &used);
      if (value.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw InvalidInput("NMLKIT_LIMITS: bad value for '" + key + "'");
    }
    if (key == "sat_atoms") base.sat_atoms = v;
    else if (key == "tw_exact_vertices") base.tw_exact_vertices = v;
    else if (key == "dp_width") base.dp_width = v;
    else if (key == "dl_defaults") base.dl_defaults = v;
    else if (key == "ael_beliefs") base.ael_beliefs = v;
    else if (key == "clique_vertices") base.clique_vertices = v;
    else if (key == "mso_universe_single") base.mso_universe_single = v;
    else if (key == "mso_universe_nested") base.mso_universe_nested = v;
    else if (key == "mso_steps") base.mso_steps = v;
    else throw InvalidInput("NMLKIT_LIMITS: unknown key '" + key + "'");
  }
  return base;
}

Limits Limits::parse(const std::string& spec) { return parse(spec, Limits{}); }

Limits Limits::from_env() {
  const char* env = std::getenv("NMLKIT_LIMITS");
  if (env == nullptr) return {};
  return parse(env);
}

}  // namespace nmlkit
