#pragma once

namespace mazer {

inline constexpr const char* version = "1.0.0";

}  // namespace mazer
