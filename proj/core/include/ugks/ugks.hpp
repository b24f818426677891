#pragma once

#include "ugks/flux.hpp"
#include "ugks/model.hpp"
#include "ugks/solver.hpp"
#include "ugks/spectral.hpp"
#include "ugks/state.hpp"
