#pragma once

#include "turnpoint/series.hpp"
#include "turnpoint/exact.hpp"
#include "turnpoint/trends.hpp"
#include "turnpoint/estimate.hpp"
#include "turnpoint/random.hpp"
#include "turnpoint/simulate.hpp"
#include "turnpoint/io.hpp"
