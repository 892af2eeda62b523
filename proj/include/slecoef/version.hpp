#pragma once

namespace slecoef {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace slecoef
