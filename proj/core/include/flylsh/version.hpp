#pragma once

namespace flylsh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace flylsh
