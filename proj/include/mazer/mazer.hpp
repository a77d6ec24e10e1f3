// mazer.hpp - umbrella header

#pragma once

#include "mazer/analytic_scattering.hpp"
#include "mazer/complex_gamma.hpp"
#include "mazer/csv.hpp"
#include "mazer/dressed_states.hpp"
#include "mazer/ensemble.hpp"
#include "mazer/errors.hpp"
#include "mazer/experiments.hpp"
#include "mazer/mode_profile.hpp"
#include "mazer/photon_distribution.hpp"
#include "mazer/propagator.hpp"
#include "mazer/spectral_transform.hpp"
#include "mazer/version.hpp"
