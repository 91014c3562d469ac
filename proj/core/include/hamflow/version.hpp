#pragma once

namespace hamflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hamflow
