#pragma once

#include "bessel_beam.hpp"
#include "detector.hpp"
#include "field_types.hpp"
#include "lg_beam.hpp"
#include "polynomials.hpp"
#include "quadrature.hpp"
#include "verify.hpp"
