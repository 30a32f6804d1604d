#pragma once

namespace gridnav {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gridnav
