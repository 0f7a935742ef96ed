#pragma once

// Everything except the JSON layer (polyode/io.hpp), which needs
// nlohmann/json.

#include "polyode/aim.hpp"
#include "polyode/applications.hpp"
#include "polyode/criteria.hpp"
#include "polyode/equation.hpp"
#include "polyode/errors.hpp"
#include "polyode/heun.hpp"
#include "polyode/matrix.hpp"
#include "polyode/rational.hpp"
#include "polyode/solve.hpp"
#include "polyode/upoly.hpp"
