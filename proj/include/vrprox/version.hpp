#pragma once

namespace vrprox {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vrprox
