#pragma once

#include <optional>
#include <vector>

#include "sorf/numerics.hpp"
#include "sorf/quadrature.hpp"

namespace sorf {

/// One node of a discretized Sobolev inner product. The node contributes
/// derivatives of order 0..order() with weight |weight|^2 |prod_{r<=i} alpha_r / i!|^2.
struct SobolevNode {
    Scalar z;
    std::vector<Scalar> alphas;  // alphas[r-1] = alpha_r, all nonzero
    Scalar weight;

    Index order() const { return static_cast<Index>(alphas.size()); }
};

struct DiscreteSobolevSpec {
    std::vector<SobolevNode> nodes;

    // m = sum_j (s_j + 1)
    Index dim() const;
    Index max_order() const;
    double weight_norm() const;

    // Throws InvalidArgument: no nodes, repeated nodes, zero alpha or weight.
    void validate() const;
};

/// Block-diagonal Jordan-like matrix J and weight vector w of an inner product.
struct JordanSystem {
    Matrix J;
    Vector w;

    Index dim() const { return J.rows(); }
};

JordanSystem build_jordan(const DiscreteSobolevSpec& spec);

/// J restricted to the single node `node`.
JordanSystem build_jordan_block(const SobolevNode& node);

/// Extended-complex poles psi_0..psi_{m-2}; the first `prescribed` entries
/// are the requested poles, the rest are free (infinite by default).
struct PoleList {
    std::vector<Pole> psi;
    std::size_t prescribed = 0;

    std::size_t size() const { return psi.size(); }
};

/// xi followed by infinity up to length m - 1. Throws SpectrumOverlapError
/// when a pole coincides with a node of the spec.
PoleList default_pole_list(const std::vector<Pole>& xi, const DiscreteSobolevSpec& spec);

/// As default_pole_list, with `free_poles` filling positions |xi|, |xi|+1, ...
PoleList pole_list(const std::vector<Pole>& xi, const std::vector<Pole>& free_poles,
                   const DiscreteSobolevSpec& spec);

/// Gegenbauer-Sobolev inner product
///   (p, q) = int p q (1-t^2)^mu dt + lambda int p' q' (1-t^2)^mu dt
/// with N requested functions and poles -omega, omega, -2 omega, 2 omega, ...
struct GegenbauerSobolevConfig {
    double mu = 2.0;
    double lambda = 1.0;
    double omega = 1.1;
    std::optional<int> pole_pairs;            // M; derived from N when absent
    std::optional<std::vector<Scalar>> poles;  // explicit Xi instead of the +-k omega pattern
    int N = 3;

    void validate() const;

    // sigma = 2 (N - 1) + 1 quadrature nodes (one derivative per node).
    std::size_t sigma() const { return static_cast<std::size_t>(2 * (N - 1) + 1); }
    Index dim() const { return static_cast<Index>(2 * sigma()); }

    // The N - 1 prescribed poles.
    std::vector<Scalar> prescribed_poles() const;
};

/// Finite poles of the rational Gauss rule: each prescribed pole repeated
/// 2 (s + 1) = 4 times.
std::vector<Scalar> rational_gauss_poles(const GegenbauerSobolevConfig& config);

/// The sigma-node rational Gauss rule for the config.
QuadratureRule gegenbauer_rule(const GegenbauerSobolevConfig& config);

/// Discrete Sobolev spec with s_j = 1, alpha = sqrt(lambda), w_j = sqrt(rule weight).
DiscreteSobolevSpec sobolev_spec_from_rule(const QuadratureRule& rule, double lambda);

DiscreteSobolevSpec discretize_gegenbauer(const GegenbauerSobolevConfig& config);

std::vector<Pole> to_poles(const std::vector<Scalar>& values);

}  // namespace sorf
