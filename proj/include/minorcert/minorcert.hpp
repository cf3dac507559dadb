#pragma once

// Umbrella header: the whole library.

#include "combinatorics.hpp"
#include "completion.hpp"
#include "convmdp.hpp"
#include "descriptor.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "mrlrc.hpp"
