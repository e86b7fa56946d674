#pragma once
#include "altmod/matgrp.hpp"
#include "altmod/moduli.hpp"
#include "json.hpp"

namespace altmod {

nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AbelianType& t);
nlohmann::json to_json(const Subgroup& s);
nlohmann::json to_json(const AlternateModule& m);
nlohmann::json to_json(const Isometry& w);
nlohmann::json to_json(const ModuliGraph& g);
nlohmann::json to_json(const MonomialGroup& h);
nlohmann::json to_json(const CentralizerReport& r);

AbelianType abelian_type_from_json(const nlohmann::json& j);
AlternateModule module_from_json(const nlohmann::json& j);

} // namespace altmod
