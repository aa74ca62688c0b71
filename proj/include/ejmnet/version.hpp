#pragma once

namespace ejmnet {

inline constexpr const char* kVersion = "1.0.0";

}
