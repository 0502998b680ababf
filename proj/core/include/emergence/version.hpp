#pragma once

namespace emergence {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace emergence
