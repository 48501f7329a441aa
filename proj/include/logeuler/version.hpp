#pragma once

namespace logeuler {

inline constexpr const char* kVersion = "0.1.0";

} // namespace logeuler
