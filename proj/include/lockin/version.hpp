#pragma once

namespace lockin {

inline constexpr const char* tool_version = "1.0.0";

} // namespace lockin
