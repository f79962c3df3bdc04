#pragma once

#define STEGAUG_VERSION_MAJOR 0
#define STEGAUG_VERSION_MINOR 1
#define STEGAUG_VERSION_PATCH 0

namespace stegaug {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stegaug
