#pragma once

namespace hcsim {

inline constexpr const char* tool_name = "hcsim";
inline constexpr const char* tool_version = "1.0.0";

}  // namespace hcsim
