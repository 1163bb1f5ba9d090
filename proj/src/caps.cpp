#include "fvslab/errors.hpp"

#include <cstdlib>
#include <sstream>

namespace fvslab {

Caps Caps::from_env() {
  const char* env = std::getenv("FVS_LAB_CAPS");
  if (env == nullptr) return Caps{};
  return parse(env);
}

Caps Caps::parse(const std::string& spec) { return parse(spec, Caps{}); }

Caps Caps::parse(const std::string& spec, Caps base) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    long long value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("caps: bad value in '" + item + "'");
    }
    if (value <= 0) throw ParseError("caps: value must be positive in '" + item + "'");
    const int v = static_cast<int>(value);
    if (key == "density") base.density_vertices = v;
    else if (key == "cycles") base.cycle_vertices = v;
    else if (key == "max-cycles") base.max_cycles = value;
    else if (key == "brute") base.brute_force_vertices = v;
    else if (key == "mc2pt") base.mc2pt_brute_vertices = v;
    else if (key == "supermodularity") base.supermodularity_vertices = v;
    else if (key == "tight") base.tight_set_vertices = v;
    else if (key == "iterations") base.cutting_plane_iterations = v;
    else throw ParseError("caps: unknown key '" + key + "'");
  }
  return base;
}

}  // namespace fvslab
