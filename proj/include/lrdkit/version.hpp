#pragma once

namespace lrdkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lrdkit
