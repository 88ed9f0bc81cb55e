#ifndef KEPLERTOP_KEPLERTOP_HPP
#define KEPLERTOP_KEPLERTOP_HPP

#include "keplertop/analytic.hpp"
#include "keplertop/errors.hpp"
#include "keplertop/grid.hpp"
#include "keplertop/hypergeometric.hpp"
#include "keplertop/model.hpp"
#include "keplertop/operators.hpp"
#include "keplertop/oracle.hpp"
#include "keplertop/report.hpp"
#include "keplertop/tridiagonal.hpp"

#endif
