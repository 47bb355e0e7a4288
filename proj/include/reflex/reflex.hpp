// Umbrella header.
#pragma once

#include "reflex/exact.hpp"
#include "reflex/lp.hpp"
#include "reflex/polytope.hpp"
#include "reflex/symmetry.hpp"
#include "reflex/measures.hpp"
#include "reflex/criteria.hpp"
#include "reflex/conjectures.hpp"
#include "reflex/io.hpp"
#include "reflex/fixtures.hpp"
#include "reflex/report.hpp"
