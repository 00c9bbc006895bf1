#pragma once

#include <string>
#include <vector>

namespace petallab::cli {

/// Exit codes: 0 ok, 2 check failure, 3 inconclusive, 64 usage error,
/// 65 config error, 70 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitConfig = 65;
inline constexpr int kExitInternal = 70;

/// Dispatches `oracle | estimate | sweep | check | report`. argv excludes the
/// program name.
int run(const std::vector<std::string>& argv);

}  // namespace petallab::cli
