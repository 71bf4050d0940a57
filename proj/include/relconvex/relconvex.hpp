#pragma once

#include "relconvex/convex_map.hpp"
#include "relconvex/diagnostics.hpp"
#include "relconvex/error.hpp"
#include "relconvex/functionals.hpp"
#include "relconvex/inequalities.hpp"
#include "relconvex/polyext.hpp"
#include "relconvex/seqcore.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {
inline constexpr const char* kVersion = "0.1.0";
}
