#pragma once

namespace cyberops {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cyberops
