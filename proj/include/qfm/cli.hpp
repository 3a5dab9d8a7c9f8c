#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "qfm/summand.hpp"

namespace qfm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kBudget = 3, kInternal = 4 };

nlohmann::json to_json(const MotiveSummand& s);
nlohmann::json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfm::cli
