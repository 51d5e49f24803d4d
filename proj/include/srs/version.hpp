#pragma once

namespace srs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace srs
