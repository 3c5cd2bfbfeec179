// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_NCENTROPY_HPP
#define NCENTROPY_NCENTROPY_HPP

#include "ncentropy/dist.hpp"
#include "ncentropy/entropy.hpp"
#include "ncentropy/errors.hpp"
#include "ncentropy/proc.hpp"
#include "ncentropy/quad.hpp"
#include "ncentropy/specfun.hpp"

#endif  // NCENTROPY_NCENTROPY_HPP
