#pragma once

#include "signsum/distribution/distribution.hpp"
#include "signsum/gaussian.hpp"
#include "signsum/io/json.hpp"
#include "signsum/io/weight_file.hpp"
#include "signsum/search.hpp"
#include "signsum/verifier/battery.hpp"
