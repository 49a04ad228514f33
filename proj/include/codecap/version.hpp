#pragma once

namespace codecap {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace codecap
