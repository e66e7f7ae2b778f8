#pragma once

#include "specshrink/bounds.hpp"
#include "specshrink/classes.hpp"
#include "specshrink/errors.hpp"
#include "specshrink/orthogonal.hpp"
#include "specshrink/parallel.hpp"
#include "specshrink/philox.hpp"
#include "specshrink/risk.hpp"
#include "specshrink/shrinkers.hpp"
#include "specshrink/simulate.hpp"
#include "specshrink/spectrum.hpp"
