#pragma once

#include "amoeba/contour.hpp"
#include "amoeba/doubling.hpp"
#include "amoeba/lopsided.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/oracle.hpp"
#include "amoeba/ronkin.hpp"
#include "amoeba/stability.hpp"
#include "amoeba/text_io.hpp"

namespace amoeba {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace amoeba
