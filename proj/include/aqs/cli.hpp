#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace aqs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `aqs` binary. `args` excludes the program name.
///
///   aqs <simulate|cvalue|order-test|interference|cci|demo>
///       [--config FILE] [--seed N] [--out-dir DIR] [--set key.path=json] ...
///
/// Every run writes its effective config to DIR/config.json; passing that
/// file back through --config reproduces the artifacts byte for byte.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Defaults for an experiment kind; throws std::invalid_argument on an
/// unknown kind.
nlohmann::json default_config(const std::string& kind);

/// 16 hex digits of FNV-1a over the compact dump of `config`.
std::string config_hash(const nlohmann::json& config);

}  // namespace aqs::cli
