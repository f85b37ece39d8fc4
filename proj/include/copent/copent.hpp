#pragma once

// Mutual information estimation via copula entropy.

#include "copent/copula.hpp"
#include "copent/data.hpp"
#include "copent/error.hpp"
#include "copent/estimators.hpp"
#include "copent/knn.hpp"
#include "copent/parallel.hpp"
#include "copent/special.hpp"
#include "copent/sweep.hpp"
#include "copent/synth.hpp"
