#ifndef LOUDCRIT_LOUDCRIT_HPP
#define LOUDCRIT_LOUDCRIT_HPP

// Everything except the CLI plumbing (cli_config.hpp, which needs json.hpp).

#include "loudcrit/errors.hpp"
#include "loudcrit/quadrature.hpp"
#include "loudcrit/loud_core.hpp"
#include "loudcrit/potential_form.hpp"
#include "loudcrit/chebyshev.hpp"
#include "loudcrit/asymptotics.hpp"
#include "loudcrit/delta.hpp"
#include "loudcrit/ode.hpp"
#include "loudcrit/period.hpp"
#include "loudcrit/parallel.hpp"
#include "loudcrit/criticality.hpp"
#include "loudcrit/verification.hpp"

#endif  // LOUDCRIT_LOUDCRIT_HPP
