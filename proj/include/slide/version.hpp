#pragma once

namespace slide {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace slide
