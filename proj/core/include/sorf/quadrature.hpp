#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sorf/numerics.hpp"

namespace sorf {

enum class RuleProvenance { gegenbauer, rational_gauss, clenshaw_curtis, imported };

std::string_view to_string(RuleProvenance p);
RuleProvenance provenance_from_string(std::string_view s);

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // strictly positive
    RuleProvenance provenance = RuleProvenance::imported;

    std::size_t size() const { return nodes.size(); }

    // sum_j weights[j] * f(nodes[j])
    Scalar integrate(const std::function<Scalar(double)>& f) const;
};

/// Throws ValidationError unless sizes match, nodes are finite, strictly
/// increasing with gaps > 1e-12, and weights are finite and > 0.
void validate_rule(const QuadratureRule& rule);

/// Orthonormal-polynomial recurrence in Gautschi's convention:
/// sqrt(beta[k+1]) p_{k+1} = (t - alpha[k]) p_k - sqrt(beta[k]) p_{k-1},
/// with beta[0] the total mass of the measure.
struct ThreeTermCoefficients {
    std::vector<double> alpha;
    std::vector<double> beta;

    std::size_t size() const { return alpha.size(); }
};

/// Recurrence of the Gegenbauer weight (1 - t^2)^mu on [-1, 1].
ThreeTermCoefficients gegenbauer_recurrence(double mu, std::size_t n);

/// Integral of (1 - t^2)^mu over [-1, 1].
double gegenbauer_mass(double mu);

/// Golub-Welsch: n-point Gauss rule from the first n recurrence pairs.
QuadratureRule gauss_from_recurrence(const ThreeTermCoefficients& rc, std::size_t n,
                                     RuleProvenance provenance);

QuadratureRule gauss_gegenbauer(double mu, std::size_t n);

/// Recurrence for the discrete measure sum_j w_j / q(z_j) delta_{z_j}, with
/// q(t) = prod_k (t - xi_k) over the given pole multiset. q must be real and
/// positive at every base node (e.g. poles listed in pairs). Computed by a
/// fully reorthogonalized Lanczos sweep, which is the stable form of the
/// discretized Stieltjes procedure. Returns min(count, base.size()) pairs.
ThreeTermCoefficients stieltjes_modified(const QuadratureRule& base, std::span<const Scalar> poles,
                                         std::size_t count);

/// Number of Gauss-Gegenbauer nodes used to discretize the modified measure.
inline std::size_t default_base_order(std::size_t sigma)
{
    return std::max<std::size_t>(64, 8 * sigma);
}

/// sigma-node rule integrating g / q against (1 - t^2)^mu exactly for every
/// polynomial g of degree <= 2 sigma - 1, where q = prod_k (t - poles[k]).
/// A base_order of 0 selects default_base_order(sigma).
QuadratureRule rational_gauss(double mu, std::span<const Scalar> poles, std::size_t sigma,
                              std::size_t base_order = 0);

/// Clenshaw-Curtis rule on [-1, 1] with unit weight; n >= 2 points.
QuadratureRule clenshaw_curtis(std::size_t n);

}  // namespace sorf
