#pragma once

namespace qfilab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qfilab
