#pragma once

#include <string>

#include <json.hpp>

#include "pdimer/collections.hpp"
#include "pdimer/dimer.hpp"
#include "pdimer/surface.hpp"

namespace pdimer {

nlohmann::json collection_to_json(const Collection& C);
Collection collection_from_json(const nlohmann::json& j);

nlohmann::json quiver_to_json(const QuiverWithFaces& Q);
QuiverWithFaces quiver_from_json(const nlohmann::json& j);

nlohmann::json plabic_to_json(const PlabicGraph& G);

nlohmann::json triangulation_to_json(const Triangulation& T);
Triangulation triangulation_from_json(const nlohmann::json& j);

std::string canonical_dump(const nlohmann::json& j);

}  // namespace pdimer
