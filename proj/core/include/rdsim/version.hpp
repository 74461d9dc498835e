#pragma once

namespace rdsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdsim
