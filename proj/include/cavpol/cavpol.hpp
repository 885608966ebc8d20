#pragma once

// Umbrella header for the cavity-dipole thermodynamics library.

#include "cavpol/special.hpp"
#include "cavpol/quadrature.hpp"
#include "cavpol/expint.hpp"
#include "cavpol/oscillatory.hpp"
#include "cavpol/rng.hpp"
#include "cavpol/model.hpp"
#include "cavpol/polariton.hpp"
#include "cavpol/polymer.hpp"
#include "cavpol/laplace.hpp"
#include "cavpol/thermo.hpp"
#include "cavpol/montecarlo.hpp"
#include "cavpol/saturation.hpp"
#include "cavpol/parallel.hpp"
#include "cavpol/io.hpp"
