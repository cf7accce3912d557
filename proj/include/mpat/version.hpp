#pragma once

namespace mpat {
inline constexpr const char* kVersion = "0.1.0";
// Serialization format of PatternId strings (see README).
inline constexpr const char* kPatternIdFormat = "v1";
}  // namespace mpat
