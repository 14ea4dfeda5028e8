#pragma once

namespace mrfoptics {

inline constexpr const char* kToolName = "mrfoptics";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mrfoptics
