#pragma once

namespace nkg {

inline constexpr const char* kVersion = "0.1.0";

} // namespace nkg
