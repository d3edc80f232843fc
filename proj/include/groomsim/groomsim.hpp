#pragma once

// Umbrella header for the social-grooming simulation and analysis toolkit.

#include "groomsim/attachment.hpp"
#include "groomsim/calibration.hpp"
#include "groomsim/csv_io.hpp"
#include "groomsim/event.hpp"
#include "groomsim/ids.hpp"
#include "groomsim/kv_config.hpp"
#include "groomsim/ledger.hpp"
#include "groomsim/manifest.hpp"
#include "groomsim/parallel.hpp"
#include "groomsim/percentile.hpp"
#include "groomsim/powerlaw.hpp"
#include "groomsim/regression.hpp"
#include "groomsim/rng.hpp"
#include "groomsim/sim_config.hpp"
#include "groomsim/simulation.hpp"
#include "groomsim/volume.hpp"
