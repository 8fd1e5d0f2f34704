#pragma once

#include "pointline/berry.hpp"
#include "pointline/errors.hpp"
#include "pointline/params.hpp"
#include "pointline/scattering.hpp"
#include "pointline/spectra.hpp"
#include "pointline/symmetry.hpp"
