// Umbrella header.

#pragma once

#include <isoent/linalg.hpp>
#include <isoent/states.hpp>
#include <isoent/pure_measures.hpp>
#include <isoent/piecewise_curve.hpp>
#include <isoent/iso_closed_form.hpp>
#include <isoent/roof_oracle.hpp>
#include <isoent/plot.hpp>
#include <isoent/verify.hpp>
