#pragma once

namespace biodilate {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSchema = "biodilate/v1";

}  // namespace biodilate
