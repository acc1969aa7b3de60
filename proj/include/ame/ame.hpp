#pragma once
// Umbrella header for the ame library.

#include "ame/core.hpp"
#include "ame/decomp.hpp"
#include "ame/exactlinalg.hpp"
#include "ame/golden.hpp"
#include "ame/invariant.hpp"
#include "ame/io.hpp"
#include "ame/latin.hpp"
#include "ame/lmoment.hpp"
#include "ame/rearrange.hpp"
#include "ame/reduction.hpp"
#include "ame/search.hpp"
#include "ame/states.hpp"
#include "ame/unitarity.hpp"
