#pragma once

namespace mtcs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mtcs
