#pragma once

#include "axioms.hpp"
#include "canonical.hpp"
#include "closure.hpp"
#include "core.hpp"
#include "formats.hpp"
#include "reductions.hpp"
#include "solver.hpp"
