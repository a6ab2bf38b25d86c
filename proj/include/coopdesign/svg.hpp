#ifndef COOPDESIGN_SVG_HPP
#define COOPDESIGN_SVG_HPP

#include <optional>
#include <string>
#include <utility>

#include "coopdesign/equilibrium.hpp"

namespace coopdesign {

// Cooperation-region diagram in the (delta/(1-delta) pB, delta/(1-delta) pG)
// plane. Output is byte-deterministic for fixed inputs. An optional marker
// shows where a particular environment sits.
std::string region_svg(const RegionGeometry& geometry,
                       std::optional<std::pair<double, double>> marker = std::nullopt);

}  // namespace coopdesign

#endif  // COOPDESIGN_SVG_HPP
