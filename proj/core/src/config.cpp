#include "hallmhd/solver/config.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "hallmhd/errors.hpp"

namespace hallmhd::solver {

std::string_view to_string(Recipe r) {
  switch (r) {
    case Recipe::single_mode: return "single_mode";
    case Recipe::taylor_green: return "taylor_green";
    case Recipe::orszag_tang_like: return "orszag_tang_like";
    case Recipe::random_band: return "random_band";
  }
  return "?";
}

Recipe recipe_from_string(std::string_view name) {
  if (name == "single_mode") return Recipe::single_mode;
  if (name == "taylor_green") return Recipe::taylor_green;
  if (name == "orszag_tang_like") return Recipe::orszag_tang_like;
  if (name == "random_band") return Recipe::random_band;
  throw ConfigError("unknown initial-data recipe '" + std::string(name) + "'");
}

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (dim != 2 && dim != 3) fail("dim must be 2 or 3");
  if (n < 8 || !std::has_single_bit(unsigned(n))) fail("n must be a power of two >= 8");
  if (!(alpha >= 1.0)) {
    std::ostringstream os;
    os << "alpha must be >= 1: the continuous-dependence regime requires alpha >= 1 and s > 1+d/2 (got alpha="
       << alpha << ")";
    fail(os.str());
  }
  if (!(s > 1.0 + 0.5 * dim)) {
    std::ostringstream os;
    os << "s must exceed 1+d/2 (got s=" << s << ", d=" << dim << ")";
    fail(os.str());
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be positive");
  if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) fail("dt must be positive or 'auto'");
  if (!(dt_max > 0.0)) fail("dt_max must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) fail("cfl_safety must lie in (0, 1]");
  if (snapshot_stride < 0) fail("snapshot_stride must be non-negative");
  if (initial.spectrum.decay < 0.0) fail("initial.decay must be non-negative");
}

}  // namespace hallmhd::solver
