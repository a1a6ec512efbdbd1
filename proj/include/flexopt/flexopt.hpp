#pragma once

// Umbrella header: pulls in the whole library.

#include "flexopt/core/matrix.hpp"
#include "flexopt/core/seed.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/finite_difference.hpp"
#include "flexopt/core/type_requirements.hpp"

#include "flexopt/function/capabilities.hpp"
#include "flexopt/function/full_function.hpp"

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/callbacks/prebuilt.hpp"

#include "flexopt/optimizers/gradient_descent.hpp"
#include "flexopt/optimizers/lbfgs.hpp"
#include "flexopt/optimizers/sgd_policies.hpp"
#include "flexopt/optimizers/sgd.hpp"
#include "flexopt/optimizers/simulated_annealing.hpp"
#include "flexopt/optimizers/coordinate_descent.hpp"
#include "flexopt/optimizers/grid_search.hpp"
#include "flexopt/optimizers/augmented_lagrangian.hpp"

#include "flexopt/problems/rosenbrock.hpp"
#include "flexopt/problems/sphere.hpp"
#include "flexopt/problems/styblinski_tang.hpp"
#include "flexopt/problems/linear_regression.hpp"
#include "flexopt/problems/constrained_quadratic.hpp"
#include "flexopt/problems/synthetic_regression.hpp"
