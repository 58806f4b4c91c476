#pragma once

namespace ergocert {

/// Library version, "major.minor.patch".
const char* version() noexcept;

}  // namespace ergocert
