#pragma once

// Umbrella header for the deformed Fourier toolkit.

#include "deformation.hpp"
#include "delta_constant.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "gamma_mixture.hpp"
#include "log_gamma.hpp"
#include "qexp.hpp"
#include "qtrig.hpp"
#include "quadrature.hpp"
#include "series.hpp"
#include "transform.hpp"
