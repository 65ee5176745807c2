#pragma once

namespace h22 {
inline constexpr const char* kVersion = "1.0.0";
}
