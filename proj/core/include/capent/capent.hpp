#pragma once

#include "capent/dynamics.hpp"
#include "capent/errors.hpp"
#include "capent/log_base.hpp"
#include "capent/measures.hpp"
#include "capent/mixed_capacity.hpp"
#include "capent/qstate.hpp"
#include "capent/scalar_search.hpp"
#include "capent/self_inverse.hpp"
#include "capent/speed_limits.hpp"
#include "capent/types.hpp"
