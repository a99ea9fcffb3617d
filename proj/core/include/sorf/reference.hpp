#pragma once

#include "sorf/problem.hpp"
#include "sorf/updating.hpp"

namespace sorf {

/// Two-stage route: the all-infinite-pole (polynomial) recurrence is
/// computed first and normalized to K = I, then every finite pole of
/// `poles` is introduced with op2_add_pole and swapped into place.
IEPSolution solve_via_sop(const DiscreteSobolevSpec& spec, const PoleList& poles);

/// Rational Arnoldi iteration on (J, w) with poles psi_0..psi_{m-2}, using
/// the newest basis vector as continuation vector and two passes of
/// classical Gram-Schmidt. Columns of the pencil are scaled so that
/// h_{k+1,k} is real and nonnegative (k_{k+1,k} when psi_k = 0).
/// Throws SpectrumOverlapError if J - psi I is singular and BreakdownError
/// when the Krylov space is exhausted early or orthogonality is lost.
IEPSolution rational_arnoldi(const JordanSystem& sys, const PoleList& poles);

}  // namespace sorf
