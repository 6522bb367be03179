#pragma once

#include "biochar/params.hpp"
#include "biochar/rootfind.hpp"
#include "biochar/production.hpp"
#include "biochar/ledger.hpp"
#include "biochar/metrics.hpp"
#include "biochar/calibration.hpp"
#include "biochar/sweep.hpp"
#include "biochar/presets.hpp"
#include "biochar/io.hpp"
