#pragma once

// Umbrella header for the decoherence library.

#include "qed_decoherence/constants.hpp"
#include "qed_decoherence/decoherence.hpp"
#include "qed_decoherence/densmat.hpp"
#include "qed_decoherence/errors.hpp"
#include "qed_decoherence/field.hpp"
#include "qed_decoherence/math.hpp"
#include "qed_decoherence/observables.hpp"
#include "qed_decoherence/oracle.hpp"
#include "qed_decoherence/params.hpp"
#include "qed_decoherence/quadrature.hpp"
#include "qed_decoherence/units.hpp"
