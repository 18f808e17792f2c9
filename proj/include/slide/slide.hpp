#pragma once

#include "slide/corner_density.hpp"
#include "slide/distances.hpp"
#include "slide/errors.hpp"
#include "slide/geometry.hpp"
#include "slide/harness.hpp"
#include "slide/io.hpp"
#include "slide/numerics.hpp"
#include "slide/processes.hpp"
#include "slide/slide_stats.hpp"
#include "slide/validation.hpp"
#include "slide/version.hpp"
