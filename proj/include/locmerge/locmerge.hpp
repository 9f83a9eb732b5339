#pragma once

// Umbrella header: the whole library in one include.

#include "locmerge/allocation.hpp"
#include "locmerge/brief.hpp"
#include "locmerge/budget.hpp"
#include "locmerge/cascade.hpp"
#include "locmerge/clock.hpp"
#include "locmerge/core.hpp"
#include "locmerge/diversity.hpp"
#include "locmerge/errors.hpp"
#include "locmerge/fixtures.hpp"
#include "locmerge/iso_tables.hpp"
#include "locmerge/json_io.hpp"
#include "locmerge/log.hpp"
#include "locmerge/metrics.hpp"
#include "locmerge/pipeline.hpp"
