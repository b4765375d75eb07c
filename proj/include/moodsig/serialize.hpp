#pragma once

// Versioned JSON documents for trained models. Doubles are written in the
// shortest decimal form that parses back to the same bits, so a save/load
// cycle reproduces every prediction exactly.

#include <filesystem>

#include <json.hpp>

#include "moodsig/learn.hpp"

namespace moodsig {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const Classifier& c);
nlohmann::json to_json(const Regressor& r);

/// Throw InputError on a wrong format tag, version or shape.
Classifier classifier_from_json(const nlohmann::json& j);
Regressor regressor_from_json(const nlohmann::json& j);

void save_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace moodsig
