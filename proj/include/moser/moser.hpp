#pragma once

#include "canon.hpp"
#include "certify.hpp"
#include "congruence.hpp"
#include "constraints.hpp"
#include "cube.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "lp_model.hpp"
#include "lp_text.hpp"
#include "point.hpp"
#include "rational.hpp"
#include "search.hpp"
#include "simplex.hpp"
#include "verify.hpp"
#include "vertex_set.hpp"
#include "weights.hpp"
