#pragma once

#include "nbsloc/errors.hpp"
#include "nbsloc/specfun.hpp"
#include "nbsloc/sampling.hpp"
#include "nbsloc/quadrature.hpp"
#include "nbsloc/states.hpp"
#include "nbsloc/locop.hpp"
#include "nbsloc/bergman.hpp"
#include "nbsloc/verify.hpp"
