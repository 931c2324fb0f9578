#pragma once
// Umbrella header: capacity bounds, reliability machinery, and the counting
// oracles for the symmetric primitive relay channel.

#include "relaybounds/probability.hpp"
#include "relaybounds/optim.hpp"
#include "relaybounds/channel.hpp"
#include "relaybounds/channel_json.hpp"
#include "relaybounds/delta.hpp"
#include "relaybounds/reliability.hpp"
#include "relaybounds/bounds.hpp"
#include "relaybounds/cover.hpp"
#include "relaybounds/geometry.hpp"
#include "relaybounds/selftest.hpp"
