#pragma once

namespace evset {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kRngId = "mt19937_64 per stream, seeds derived by splitmix64(master, index)";

} // namespace evset
