#pragma once

namespace fqcircle {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fqcircle
