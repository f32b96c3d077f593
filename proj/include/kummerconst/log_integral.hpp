#pragma once

#include "kummerconst/enclosure.hpp"

namespace kummerconst {

/// Enclosure of li(x) = integral from 2 to x of dt / log t, of width at most
/// target_error, as Ei(log x) - Ei(log 2) with directed rounding. Non-dyadic
/// x is widened to its neighbouring floats.
///
/// Throws DomainError for x < 2 and PrecisionNotReached if the working
/// precision limit is hit.
Enclosure log_integral(const Rational& x, const Rational& target_error);

}  // namespace kummerconst
