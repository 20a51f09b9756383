#pragma once

#include "toricdvr/arith.hpp"
#include "toricdvr/buildings.hpp"
#include "toricdvr/bundle.hpp"
#include "toricdvr/chern.hpp"
#include "toricdvr/error.hpp"
#include "toricdvr/linalg.hpp"
#include "toricdvr/polyhedral.hpp"
#include "toricdvr/ppoly.hpp"
