#ifndef NANOBEAM_NANOBEAM_HPP
#define NANOBEAM_NANOBEAM_HPP

#include "nanobeam/beam_modes.hpp"
#include "nanobeam/casimir.hpp"
#include "nanobeam/decoherence.hpp"
#include "nanobeam/errors.hpp"
#include "nanobeam/quadrature.hpp"
#include "nanobeam/spectrum.hpp"

#endif  // NANOBEAM_NANOBEAM_HPP
