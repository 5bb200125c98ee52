#pragma once

// Umbrella header: cone-ordered vector spaces, the nonlinear scalarization
// xi_e, the scalar metric/norm it induces from cone metrics/norms, and a
// Banach fixed-point solver over the induced metric.

#include "conescal/check_report.hpp"
#include "conescal/cone.hpp"
#include "conescal/cone_metric.hpp"
#include "conescal/cone_norm.hpp"
#include "conescal/fixed_point.hpp"
#include "conescal/scalarizer.hpp"
#include "conescal/vector.hpp"
