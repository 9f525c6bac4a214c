#pragma once

namespace rpng {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rpng
