#pragma once

#include <span>
#include <vector>

#include "sorf/problem.hpp"
#include "sorf/updating.hpp"

namespace sorf {

/// r_k^{(d)}(points[p]) for k < count(), d <= max_deriv().
struct SorfTable {
    std::vector<Matrix> values;  // values[d](k, p)
    std::vector<Scalar> points;
    // Largest ratio sum|terms| / |result| met in the recurrence; a rough
    // amplification factor for rounding errors in the evaluation.
    double conditioning = 1.0;

    Index count() const { return values.empty() ? 0 : values.front().rows(); }
    Index max_deriv() const { return static_cast<Index>(values.size()) - 1; }
    Scalar at(Index k, Index d, Index p) const { return values[static_cast<std::size_t>(d)](k, p); }
};

/// Evaluate the first `count` rational functions generated by the pencil
/// (count = 0 means all of them) and their derivatives up to max_deriv.
/// Throws PoleCollisionError when a point is (numerically) a pole.
SorfTable evaluate_sorfs(const HessenbergPencil& pencil, double wnorm,
                         std::span<const Scalar> points, Index max_deriv, Index count = 0);

/// Table at the nodes of `spec`, derivatives up to its maximal order.
SorfTable evaluate_at_nodes(const DiscreteSobolevSpec& spec, const IEPSolution& sol);

/// M(k, h) = <r_k, r_h> in the discrete Sobolev inner product of `spec`.
/// The table must hold the nodes of spec in order.
Matrix discrete_moment_matrix(const DiscreteSobolevSpec& spec, const SorfTable& table);

struct ContinuousMoment {
    Matrix M;
    std::size_t cc_order = 0;  // order of the accepted rule
    bool converged = false;    // successive orders agreed to 1e-12
};

/// Moment matrix of the first n functions (n = 0: all) in the continuous
/// Gegenbauer-Sobolev inner product, by Clenshaw-Curtis with the weight
/// folded into the integrand. The order is doubled from cc_order until
/// two successive results agree to 1e-12 relative to max(1, max|M|),
/// at most max_doublings times.
ContinuousMoment continuous_moment_matrix(const GegenbauerSobolevConfig& config,
                                          const IEPSolution& sol, Index n = 0,
                                          std::size_t cc_order = 400, int max_doublings = 5);

/// ||J Q K - Q H||_2 / max(||J Q K||_2, ||Q H||_2)
double metric_recurrence(const JordanSystem& sys, const IEPSolution& sol);

/// max_k of |h/k - psi_k| / |psi_k| for finite psi_k (absolute when psi_k = 0)
/// and |k/h| for infinite psi_k.
double metric_poles(const IEPSolution& sol, const PoleList& poles);

/// ||Q^H Q - I||_2
double metric_orthonormality(const IEPSolution& sol);

/// ||M - I||_2
double metric_sobolev(const Matrix& M);

/// ||M_n - I||_2 on the leading n x n block.
double metric_sobolev_leading(const Matrix& M, Index n);

/// Largest entry of |M - I|.
double max_entry_deviation(const Matrix& M);

/// Agreement of two tables up to one unimodular factor per function: each
/// function of `a` and `b` is divided by its own entry at the position where
/// |a| is largest, and the maximal difference is returned.
double table_agreement(const SorfTable& a, const SorfTable& b);

/// Every check an IEPSolution for (sys, poles) must pass. Empty when valid.
std::vector<std::string> invariant_violations(const JordanSystem& sys, const IEPSolution& sol,
                                              const PoleList& poles, double tol = 1e-12);

}  // namespace sorf
