#include "sorf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sorf {

std::string_view to_string(RuleProvenance p)
{
    switch (p) {
    case RuleProvenance::gegenbauer: return "gegenbauer";
    case RuleProvenance::rational_gauss: return "rational-gauss";
    case RuleProvenance::clenshaw_curtis: return "clenshaw-curtis";
    case RuleProvenance::imported: return "imported";
    }
    return "imported";
}

RuleProvenance provenance_from_string(std::string_view s)
{
    if (s == "gegenbauer") return RuleProvenance::gegenbauer;
    if (s == "rational-gauss") return RuleProvenance::rational_gauss;
    if (s == "clenshaw-curtis") return RuleProvenance::clenshaw_curtis;
    if (s == "imported") return RuleProvenance::imported;
    throw ValidationError("unknown rule provenance '" + std::string(s) + "'");
}

Scalar QuadratureRule::integrate(const std::function<Scalar(double)>& f) const
{
    Scalar sum = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        sum += weights[j] * f(nodes[j]);
    }
    return sum;
}

void validate_rule(const QuadratureRule& rule)
{
    if (rule.nodes.size() != rule.weights.size()) {
        throw ValidationError("quadrature rule: node and weight counts differ");
    }
    if (rule.nodes.empty()) {
        throw ValidationError("quadrature rule: no nodes");
    }
    for (std::size_t j = 0; j < rule.size(); ++j) {
        if (!std::isfinite(rule.nodes[j]) || !std::isfinite(rule.weights[j])) {
            throw ValidationError("quadrature rule: non-finite entry at index " + std::to_string(j));
        }
        if (!(rule.weights[j] > 0.0)) {
            throw ValidationError("quadrature rule: weight " + std::to_string(j) +
                                  " is not positive");
        }
        if (j > 0 && !(rule.nodes[j] - rule.nodes[j - 1] > 1e-12)) {
            throw ValidationError("quadrature rule: nodes not strictly increasing at index " +
                                  std::to_string(j));
        }
    }
}

double gegenbauer_mass(double mu)
{
    if (!(mu > -1.0)) {
        throw InvalidArgument("gegenbauer weight requires mu > -1");
    }
    if (mu == std::floor(mu) && mu <= 60.0) {
        // 2^{2n+1} (n!)^2 / (2n+1)!  =  2 * prod_{k=1}^{n} 2k / (2k+1)
        double mass = 2.0;
        for (int k = 1; k <= static_cast<int>(mu); ++k) {
            mass *= 2.0 * k / (2.0 * k + 1.0);
        }
        return mass;
    }
    return std::sqrt(std::numbers::pi) *
           std::exp(std::lgamma(mu + 1.0) - std::lgamma(mu + 1.5));
}

ThreeTermCoefficients gegenbauer_recurrence(double mu, std::size_t n)
{
    ThreeTermCoefficients rc;
    rc.alpha.assign(n, 0.0);
    rc.beta.resize(n);
    if (n == 0) {
        return rc;
    }
    rc.beta[0] = gegenbauer_mass(mu);
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        if (k == 1) {
            rc.beta[k] = 1.0 / (3.0 + 2.0 * mu);
        } else {
            rc.beta[k] = kk * (kk + 2.0 * mu) /
                         ((2.0 * kk + 2.0 * mu + 1.0) * (2.0 * kk + 2.0 * mu - 1.0));
        }
    }
    return rc;
}

QuadratureRule gauss_from_recurrence(const ThreeTermCoefficients& rc, std::size_t n,
                                     RuleProvenance provenance)
{
    if (n == 0 || n > rc.size()) {
        throw InvalidArgument("gauss_from_recurrence: need 1 <= n <= number of coefficients");
    }
    Eigen::VectorXd diag(static_cast<Index>(n));
    Eigen::VectorXd sub(static_cast<Index>(n > 1 ? n - 1 : 0));
    for (std::size_t k = 0; k < n; ++k) {
        diag(static_cast<Index>(k)) = rc.alpha[k];
        if (k + 1 < n) {
            if (!(rc.beta[k + 1] > 0.0)) {
                throw PositivityError("gauss_from_recurrence: non-positive recurrence norm");
            }
            sub(static_cast<Index>(k)) = std::sqrt(rc.beta[k + 1]);
        }
    }
    QuadratureRule rule;
    rule.provenance = provenance;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = rc.alpha[0];
        rule.weights[0] = rc.beta[0];
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("gauss_from_recurrence: tridiagonal eigensolver failed");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double v0 = eig.eigenvectors()(0, static_cast<Index>(j));
        rule.nodes[j] = eig.eigenvalues()(static_cast<Index>(j));
        rule.weights[j] = rc.beta[0] * v0 * v0;
    }
    return rule;
}

QuadratureRule gauss_gegenbauer(double mu, std::size_t n)
{
    if (n == 0) {
        throw InvalidArgument("gauss_gegenbauer: n must be >= 1");
    }
    return gauss_from_recurrence(gegenbauer_recurrence(mu, n), n, RuleProvenance::gegenbauer);
}

namespace {

Scalar pole_product(double t, std::span<const Scalar> poles)
{
    Scalar q = 1.0;
    for (const Scalar& xi : poles) {
        q *= Scalar(t) - xi;
    }
    return q;
}

// q(t) as a positive real number, or PositivityError.
double positive_modifier(double t, std::span<const Scalar> poles)
{
    const Scalar q = pole_product(t, poles);
    if (!(q.real() > 0.0) || std::abs(q.imag()) > 1e-12 * std::abs(q)) {
        throw PositivityError("modified measure: pole product is not real positive at t = " +
                              std::to_string(t));
    }
    return q.real();
}

void check_poles_outside(std::span<const Scalar> poles, double lo, double hi)
{
    for (const Scalar& xi : poles) {
        if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) {
            throw InvalidArgument("modified measure: poles must be finite");
        }
        if (xi.imag() == 0.0 && xi.real() >= lo && xi.real() <= hi) {
            throw SpectrumOverlapError("modified measure: pole " + std::to_string(xi.real()) +
                                       " lies inside the support");
        }
    }
}

}  // namespace

ThreeTermCoefficients stieltjes_modified(const QuadratureRule& base, std::span<const Scalar> poles,
                                         std::size_t count)
{
    const std::size_t n = base.size();
    if (n == 0) {
        throw InvalidArgument("stieltjes_modified: empty base rule");
    }
    check_poles_outside(poles, std::min(-1.0, base.nodes.front()), std::max(1.0, base.nodes.back()));

    Eigen::VectorXd x(static_cast<Index>(n));
    Eigen::VectorXd v(static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        x(static_cast<Index>(j)) = base.nodes[j];
        v(static_cast<Index>(j)) = base.weights[j] / positive_modifier(base.nodes[j], poles);
    }

    count = std::min(count, n);
    ThreeTermCoefficients rc;
    rc.alpha.reserve(count);
    rc.beta.reserve(count);
    rc.beta.push_back(v.sum());

    Eigen::MatrixXd basis(static_cast<Index>(n), static_cast<Index>(count));
    Eigen::VectorXd q = v.cwiseSqrt() / std::sqrt(rc.beta[0]);
    for (std::size_t k = 0; k < count; ++k) {
        const auto kk = static_cast<Index>(k);
        basis.col(kk) = q;
        Eigen::VectorXd r = x.cwiseProduct(q);
        rc.alpha.push_back(q.dot(r));
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd proj = basis.leftCols(kk + 1).transpose() * r;
            r -= basis.leftCols(kk + 1) * proj;
        }
        if (k + 1 == count) {
            break;
        }
        const double b = r.norm();
        if (!(b > 0.0)) {
            throw NumericalError("stieltjes_modified: recurrence terminated early");
        }
        rc.beta.push_back(b * b);
        q = r / b;
    }
    return rc;
}

QuadratureRule rational_gauss(double mu, std::span<const Scalar> poles, std::size_t sigma,
                              std::size_t base_order)
{
    if (sigma == 0) {
        throw InvalidArgument("rational_gauss: sigma must be >= 1");
    }
    if (base_order == 0) {
        base_order = default_base_order(sigma);
    }
    if (base_order < sigma) {
        throw InvalidArgument("rational_gauss: base_order must be >= sigma");
    }
    const QuadratureRule base = gauss_gegenbauer(mu, base_order);
    const ThreeTermCoefficients rc = stieltjes_modified(base, poles, sigma);
    QuadratureRule rule = gauss_from_recurrence(rc, sigma, RuleProvenance::rational_gauss);
    for (std::size_t j = 0; j < sigma; ++j) {
        const Scalar q = pole_product(rule.nodes[j], poles);
        const double w = rule.weights[j] * q.real();
        if (!(w > 0.0) || std::abs(q.imag()) > 1e-12 * std::abs(q)) {
            throw PositivityError("rational_gauss: invalid pole configuration, weight " +
                                  std::to_string(j) + " is not positive");
        }
        rule.weights[j] = w;
    }
    return rule;
}

QuadratureRule clenshaw_curtis(std::size_t n)
{
    if (n < 2) {
        throw InvalidArgument("clenshaw_curtis: n must be >= 2");
    }
    const std::size_t big_n = n - 1;
    const double nn = static_cast<double>(big_n);
    std::vector<double> theta(n);
    for (std::size_t k = 0; k < n; ++k) {
        theta[k] = std::numbers::pi * static_cast<double>(k) / nn;
    }
    std::vector<double> w(n, 0.0);
    std::vector<double> v(n, 1.0);
    if (big_n % 2 == 0) {
        w.front() = w.back() = 1.0 / (nn * nn - 1.0);
        for (std::size_t k = 1; k < big_n / 2; ++k) {
            const double kk = static_cast<double>(k);
            for (std::size_t j = 1; j < big_n; ++j) {
                v[j] -= 2.0 * std::cos(2.0 * kk * theta[j]) / (4.0 * kk * kk - 1.0);
            }
        }
        for (std::size_t j = 1; j < big_n; ++j) {
            v[j] -= std::cos(nn * theta[j]) / (nn * nn - 1.0);
        }
    } else {
        w.front() = w.back() = 1.0 / (nn * nn);
        for (std::size_t k = 1; k <= (big_n - 1) / 2; ++k) {
            const double kk = static_cast<double>(k);
            for (std::size_t j = 1; j < big_n; ++j) {
                v[j] -= 2.0 * std::cos(2.0 * kk * theta[j]) / (4.0 * kk * kk - 1.0);
            }
        }
    }
    for (std::size_t j = 1; j < big_n; ++j) {
        w[j] = 2.0 * v[j] / nn;
    }

    // cos(theta) runs from 1 down to -1; emit in increasing order.
    QuadratureRule rule;
    rule.provenance = RuleProvenance::clenshaw_curtis;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;
        rule.nodes[k] = std::cos(theta[src]);
        rule.weights[k] = w[src];
    }
    // Force exact symmetry of the node set.
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double a = 0.5 * (rule.nodes[n - 1 - k] - rule.nodes[k]);
        rule.nodes[k] = -a;
        rule.nodes[n - 1 - k] = a;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

}  // namespace sorf
