#pragma once

namespace fwps {
inline constexpr const char* kToolVersion = "0.1.0";
}
