#pragma once

namespace ballchain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ballchain
