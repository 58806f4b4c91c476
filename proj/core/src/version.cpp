#include "ergocert/version.hpp"

namespace ergocert {

const char* version() noexcept { return ERGOCERT_VERSION; }

}  // namespace ergocert
