#pragma once

namespace colsel {

inline constexpr int kVersionMajor = 0;
inline constexpr int kVersionMinor = 1;
inline constexpr int kVersionPatch = 0;
inline constexpr const char* kVersionString = "0.1.0";

// Bumped whenever a field of any emitted report changes.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace colsel
