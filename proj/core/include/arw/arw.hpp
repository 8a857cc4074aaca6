#pragma once

// Umbrella header for the activated-random-walk simulation core.

#include "arw/animals.hpp"
#include "arw/ctmc.hpp"
#include "arw/engine.hpp"
#include "arw/ghosts.hpp"
#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"
#include "arw/jumps.hpp"
#include "arw/lattice.hpp"
#include "arw/parallel.hpp"
#include "arw/particle_hole.hpp"
#include "arw/phase.hpp"
#include "arw/recursion.hpp"
#include "arw/rng.hpp"
#include "arw/site_state.hpp"
#include "arw/soc.hpp"
#include "arw/stats.hpp"
#include "arw/taggi.hpp"
#include "arw/traps.hpp"
#include "arw/walks.hpp"
