#pragma once

#include "topecube/sign_word.hpp"
#include "topecube/vertex_set.hpp"
#include "topecube/tope_graph.hpp"
#include "topecube/faces.hpp"
#include "topecube/canonical.hpp"
#include "topecube/topes_io.hpp"
#include "topecube/expansions.hpp"
#include "topecube/enumerate.hpp"
#include "topecube/cells.hpp"
#include "topecube/corners.hpp"
#include "topecube/euclid.hpp"
#include "topecube/mutation.hpp"
#include "topecube/realizable.hpp"

namespace topecube {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;
}  // namespace topecube
