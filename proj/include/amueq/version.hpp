#pragma once

#include <string_view>

namespace amueq {

inline constexpr std::string_view kToolVersion = "amueq 0.1.0";

} // namespace amueq
