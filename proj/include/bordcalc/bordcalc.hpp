#ifndef BORDCALC_BORDCALC_HPP
#define BORDCALC_BORDCALC_HPP

// Everything at once.

#include "bordcalc/errors.hpp"
#include "bordcalc/gf2poly.hpp"
#include "bordcalc/coefficients.hpp"
#include "bordcalc/localized.hpp"
#include "bordcalc/presentation.hpp"
#include "bordcalc/charnum.hpp"
#include "bordcalc/conner_floyd.hpp"
#include "bordcalc/parser.hpp"
#include "bordcalc/config.hpp"
#include "bordcalc/verify.hpp"

#endif  // BORDCALC_BORDCALC_HPP
