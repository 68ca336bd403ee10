#pragma once

namespace freeknot {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace freeknot
