#pragma once

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/io/json.hpp"
#include "powerdomain/lawcheck/generators.hpp"
#include "powerdomain/lawcheck/instance.hpp"
#include "powerdomain/lawcheck/mutations.hpp"
#include "powerdomain/lawcheck/oracles.hpp"
#include "powerdomain/lawcheck/random.hpp"
#include "powerdomain/lawcheck/suites.hpp"
#include "powerdomain/ops.hpp"
#include "powerdomain/point_set.hpp"
#include "powerdomain/probability.hpp"
#include "powerdomain/support.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"
