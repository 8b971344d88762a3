#pragma once

#include "ltwist/specfun/afe_kernel.hpp"
#include "ltwist/specfun/bessel_k.hpp"
#include "ltwist/specfun/gamma.hpp"
#include "ltwist/specfun/hurwitz.hpp"
#include "ltwist/specfun/whittaker.hpp"
