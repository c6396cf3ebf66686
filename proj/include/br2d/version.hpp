#pragma once

namespace br2d {

inline constexpr const char* version = "0.1.0";

}  // namespace br2d
