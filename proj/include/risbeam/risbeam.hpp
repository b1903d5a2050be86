#pragma once

#include "risbeam/channel.hpp"
#include "risbeam/errors.hpp"
#include "risbeam/export.hpp"
#include "risbeam/fieldmap.hpp"
#include "risbeam/geometry.hpp"
#include "risbeam/metrics.hpp"
#include "risbeam/optimizer.hpp"
#include "risbeam/presets.hpp"
#include "risbeam/scenario.hpp"
#include "risbeam/scenario_io.hpp"
#include "risbeam/random_scene.hpp"
#include "risbeam/cli.hpp"
