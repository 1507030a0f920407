#pragma once

#include "gcdsum/alpha.hpp"
#include "gcdsum/arith.hpp"
#include "gcdsum/closure.hpp"
#include "gcdsum/compensated.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/extremal.hpp"
#include "gcdsum/integer.hpp"
#include "gcdsum/integer_set.hpp"
#include "gcdsum/io.hpp"
#include "gcdsum/spectral.hpp"
#include "gcdsum/sums.hpp"
