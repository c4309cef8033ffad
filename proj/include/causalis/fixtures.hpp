#pragma once

#include <optional>
#include <string>
#include <vector>

namespace causalis {

/// Bundled example models and epistemic-state files. Model fixtures parse with
/// parse_model_document; ".k" fixtures are context files, ".w" weight files.
std::vector<std::string> fixture_names();
std::optional<std::string> find_fixture(const std::string& name);

}  // namespace causalis
