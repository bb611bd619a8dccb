#pragma once

#include "decimation_trees/complexity.hpp"
#include "decimation_trees/decimation.hpp"
#include "decimation_trees/exact/algebraic_class.hpp"
#include "decimation_trees/exact/integer_factor.hpp"
#include "decimation_trees/exact/matrix.hpp"
#include "decimation_trees/exact/polynomial.hpp"
#include "decimation_trees/exact/rational.hpp"
#include "decimation_trees/exact/rational_function.hpp"
#include "decimation_trees/exact/resultant.hpp"
#include "decimation_trees/factored.hpp"
#include "decimation_trees/fractal_model.hpp"
#include "decimation_trees/kirchhoff.hpp"
#include "decimation_trees/tree_counter.hpp"
