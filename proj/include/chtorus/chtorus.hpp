#pragma once

// Umbrella header for the torus spectral toolkit: a family of one- and
// two-component nonlinear transport systems, their geodesic interpretation,
// conservation monitors, sectional curvature, and b=2 rigidity certification.

#include "chtorus/conservation.hpp"
#include "chtorus/curvature.hpp"
#include "chtorus/diagnostics_io.hpp"
#include "chtorus/dynamics.hpp"
#include "chtorus/errors.hpp"
#include "chtorus/fft.hpp"
#include "chtorus/field.hpp"
#include "chtorus/geodesic.hpp"
#include "chtorus/grid.hpp"
#include "chtorus/inertia.hpp"
#include "chtorus/random_fields.hpp"
#include "chtorus/rigidity.hpp"
#include "chtorus/runner.hpp"
#include "chtorus/scenario.hpp"
#include "chtorus/spectral.hpp"
#include "chtorus/state.hpp"
