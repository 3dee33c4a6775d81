#pragma once

namespace brank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace brank
