#pragma once

// Umbrella header for the MTCS thermometry library.

#include "mtcs/errors.hpp"
#include "mtcs/figures.hpp"
#include "mtcs/hilbert.hpp"
#include "mtcs/metrology.hpp"
#include "mtcs/model.hpp"
#include "mtcs/photon_stats.hpp"
#include "mtcs/sweep.hpp"
#include "mtcs/version.hpp"
