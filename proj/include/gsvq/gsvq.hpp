// Umbrella header for the gsvq library (everything except the CLI).
#pragma once

#include "gsvq/codec.hpp"
#include "gsvq/image.hpp"
#include "gsvq/metrics.hpp"
#include "gsvq/persistence.hpp"
#include "gsvq/quantizer.hpp"
#include "gsvq/rng.hpp"
