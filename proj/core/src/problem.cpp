#include "sorf/problem.hpp"

#include <cmath>
#include <string>

namespace sorf {

Index DiscreteSobolevSpec::dim() const
{
    Index m = 0;
    for (const auto& n : nodes) {
        m += n.order() + 1;
    }
    return m;
}

Index DiscreteSobolevSpec::max_order() const
{
    Index s = 0;
    for (const auto& n : nodes) {
        s = std::max(s, n.order());
    }
    return s;
}

double DiscreteSobolevSpec::weight_norm() const
{
    double sum = 0.0;
    for (const auto& n : nodes) {
        sum += std::norm(n.weight);
    }
    return std::sqrt(sum);
}

void DiscreteSobolevSpec::validate() const
{
    if (nodes.empty()) {
        throw InvalidArgument("sobolev spec: no nodes");
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto& n = nodes[j];
        if (!std::isfinite(n.z.real()) || !std::isfinite(n.z.imag())) {
            throw InvalidArgument("sobolev spec: node " + std::to_string(j) + " is not finite");
        }
        if (n.weight == Scalar(0.0) || !std::isfinite(std::abs(n.weight))) {
            throw InvalidArgument("sobolev spec: weight " + std::to_string(j) +
                                  " must be finite and nonzero");
        }
        for (const auto& a : n.alphas) {
            if (a == Scalar(0.0) || !std::isfinite(std::abs(a))) {
                throw InvalidArgument("sobolev spec: derivative scaling at node " +
                                      std::to_string(j) + " must be finite and nonzero");
            }
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (std::abs(nodes[i].z - n.z) <= 1e-12) {
                throw InvalidArgument("sobolev spec: nodes " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
            }
        }
    }
}

JordanSystem build_jordan_block(const SobolevNode& node)
{
    const Index n = node.order() + 1;
    JordanSystem sys{Matrix::Zero(n, n), Vector::Zero(n)};
    for (Index p = 0; p < n; ++p) {
        sys.J(p, p) = node.z;
    }
    // alpha_s at the top of the superdiagonal, alpha_1 at the bottom.
    for (Index p = 0; p + 1 < n; ++p) {
        sys.J(p, p + 1) = node.alphas[static_cast<std::size_t>(node.order() - 1 - p)];
    }
    sys.w(n - 1) = node.weight;
    return sys;
}

JordanSystem build_jordan(const DiscreteSobolevSpec& spec)
{
    spec.validate();
    const Index m = spec.dim();
    JordanSystem sys{Matrix::Zero(m, m), Vector::Zero(m)};
    Index offset = 0;
    for (const auto& node : spec.nodes) {
        const JordanSystem blk = build_jordan_block(node);
        const Index n = blk.dim();
        sys.J.block(offset, offset, n, n) = blk.J;
        sys.w.segment(offset, n) = blk.w;
        offset += n;
    }
    return sys;
}

PoleList pole_list(const std::vector<Pole>& xi, const std::vector<Pole>& free_poles,
                   const DiscreteSobolevSpec& spec)
{
    spec.validate();
    const auto slots = static_cast<std::size_t>(spec.dim() - 1);
    if (xi.size() + free_poles.size() > slots) {
        throw InvalidArgument("pole list: " + std::to_string(xi.size() + free_poles.size()) +
                              " poles given but the pencil has only " + std::to_string(slots) +
                              " subdiagonal positions");
    }
    PoleList list;
    list.prescribed = xi.size();
    list.psi = xi;
    list.psi.insert(list.psi.end(), free_poles.begin(), free_poles.end());
    list.psi.resize(slots, Pole::infinity());
    for (const Pole& p : list.psi) {
        if (p.is_infinite()) {
            continue;
        }
        for (const auto& node : spec.nodes) {
            if (std::abs(p.value() - node.z) <= 1e-14 * std::max(1.0, std::abs(node.z))) {
                throw SpectrumOverlapError("pole list: pole coincides with node " +
                                           std::to_string(node.z.real()));
            }
        }
    }
    return list;
}

PoleList default_pole_list(const std::vector<Pole>& xi, const DiscreteSobolevSpec& spec)
{
    return pole_list(xi, {}, spec);
}

void GegenbauerSobolevConfig::validate() const
{
    if (!(mu > -1.0)) {
        throw InvalidArgument("config: mu must be > -1");
    }
    if (!(lambda >= 0.0)) {
        throw InvalidArgument("config: lambda must be >= 0");
    }
    if (lambda == 0.0) {
        throw InvalidArgument(
            "config: lambda = 0 makes the derivative scaling sqrt(lambda) vanish; "
            "the discretized inner product needs nonzero scalings");
    }
    if (N < 1) {
        throw InvalidArgument("config: N must be >= 1");
    }
    if (poles) {
        if (poles->size() < static_cast<std::size_t>(N - 1)) {
            throw InvalidArgument("config: explicit pole list needs at least N - 1 entries");
        }
        return;
    }
    if (!(omega > 1.0)) {
        throw InvalidArgument("config: omega must be > 1");
    }
    if (pole_pairs) {
        if (*pole_pairs < 0) {
            throw InvalidArgument("config: M must be >= 0");
        }
        if (2 * *pole_pairs < N - 1) {
            throw InvalidArgument("config: M pole pairs give " + std::to_string(2 * *pole_pairs) +
                                  " poles but N - 1 = " + std::to_string(N - 1) +
                                  " are required");
        }
    }
}

std::vector<Scalar> GegenbauerSobolevConfig::prescribed_poles() const
{
    validate();
    const auto count = static_cast<std::size_t>(N - 1);
    if (poles) {
        return {poles->begin(), poles->begin() + static_cast<std::ptrdiff_t>(count)};
    }
    std::vector<Scalar> xi;
    xi.reserve(count);
    for (std::size_t k = 0; xi.size() < count; ++k) {
        const double mag = static_cast<double>(k / 2 + 1) * omega;
        xi.emplace_back(k % 2 == 0 ? -mag : mag);
    }
    return xi;
}

std::vector<Scalar> rational_gauss_poles(const GegenbauerSobolevConfig& config)
{
    std::vector<Scalar> out;
    for (const Scalar& xi : config.prescribed_poles()) {
        out.insert(out.end(), 4, xi);
    }
    return out;
}

QuadratureRule gegenbauer_rule(const GegenbauerSobolevConfig& config)
{
    const std::vector<Scalar> poles = rational_gauss_poles(config);
    return rational_gauss(config.mu, poles, config.sigma());
}

DiscreteSobolevSpec sobolev_spec_from_rule(const QuadratureRule& rule, double lambda)
{
    validate_rule(rule);
    if (!(lambda > 0.0)) {
        throw InvalidArgument("sobolev spec: lambda must be > 0");
    }
    DiscreteSobolevSpec spec;
    spec.nodes.reserve(rule.size());
    const Scalar alpha = std::sqrt(lambda);
    for (std::size_t j = 0; j < rule.size(); ++j) {
        spec.nodes.push_back({rule.nodes[j], {alpha}, std::sqrt(rule.weights[j])});
    }
    return spec;
}

DiscreteSobolevSpec discretize_gegenbauer(const GegenbauerSobolevConfig& config)
{
    config.validate();
    return sobolev_spec_from_rule(gegenbauer_rule(config), config.lambda);
}

std::vector<Pole> to_poles(const std::vector<Scalar>& values)
{
    return {values.begin(), values.end()};
}

}  // namespace sorf
