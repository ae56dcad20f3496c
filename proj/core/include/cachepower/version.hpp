#pragma once

namespace cachepower {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cachepower
