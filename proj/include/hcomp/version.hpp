#pragma once

namespace hcomp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hcomp
