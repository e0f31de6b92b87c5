#pragma once

namespace holab {

// Fixed version string; embedded in every report bundle so reruns are
// byte-identical.
inline constexpr const char* kVersion = "holab 0.1.0";

}  // namespace holab
