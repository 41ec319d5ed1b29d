#pragma once

#include "matlie/error.hpp"
#include "matlie/field.hpp"
#include "matlie/matrix.hpp"
#include "matlie/subspace.hpp"
#include "matlie/lie.hpp"
#include "matlie/random.hpp"
#include "matlie/centralizer.hpp"
#include "matlie/recovery.hpp"
#include "matlie/experiments.hpp"
