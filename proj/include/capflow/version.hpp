#pragma once

namespace capflow {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace capflow
