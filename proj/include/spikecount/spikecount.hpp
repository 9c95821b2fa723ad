#pragma once

#include "calibrate.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "lanczos.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "presets.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "spectra.hpp"
#include "tracy_widom.hpp"
