#pragma once

#include "sorf/errors.hpp"
#include "sorf/metrics.hpp"
#include "sorf/numerics.hpp"
#include "sorf/problem.hpp"
#include "sorf/quadrature.hpp"
#include "sorf/reference.hpp"
#include "sorf/updating.hpp"
