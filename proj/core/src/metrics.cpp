#include "sorf/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace sorf {

SorfTable evaluate_sorfs(const HessenbergPencil& pencil, double wnorm,
                         std::span<const Scalar> points, Index max_deriv, Index count)
{
    const Index m = pencil.dim();
    const Index n = count == 0 ? m : count;
    if (n < 0 || n > m) {
        throw InvalidArgument("evaluate_sorfs: count exceeds pencil size");
    }
    if (max_deriv < 0) {
        throw InvalidArgument("evaluate_sorfs: negative derivative order");
    }
    if (!(wnorm > 0.0)) {
        throw InvalidArgument("evaluate_sorfs: weight norm must be positive");
    }
    const Matrix& H = pencil.H();
    const Matrix& K = pencil.K();
    const double scale = pencil.scale();
    const auto np = static_cast<Index>(points.size());

    SorfTable table;
    table.points.assign(points.begin(), points.end());
    table.values.assign(static_cast<std::size_t>(max_deriv + 1), Matrix::Zero(n, np));
    if (n == 0) {
        return table;
    }
    table.values[0].row(0).setConstant(1.0 / wnorm);

    for (Index p = 0; p < np; ++p) {
        const Scalar t = points[static_cast<std::size_t>(p)];
        for (Index j = 0; j + 1 < n; ++j) {
            const Scalar denom = t * K(j + 1, j) - H(j + 1, j);
            if (std::abs(denom) < 1e-13 * scale * std::max(1.0, std::abs(t))) {
                throw PoleCollisionError("evaluate_sorfs: point coincides with pole " +
                                         std::to_string(j));
            }
            for (Index d = 0; d <= max_deriv; ++d) {
                Matrix& cur = table.values[static_cast<std::size_t>(d)];
                Scalar rhs = 0.0;
                double mag = 0.0;
                for (Index i = 0; i <= j; ++i) {
                    Scalar term = (H(i, j) - t * K(i, j)) * cur(i, p);
                    if (d > 0) {
                        term -= static_cast<double>(d) * K(i, j) *
                                table.values[static_cast<std::size_t>(d - 1)](i, p);
                    }
                    rhs += term;
                    mag += std::abs(term);
                }
                if (d > 0) {
                    const Scalar term = static_cast<double>(d) * K(j + 1, j) *
                                        table.values[static_cast<std::size_t>(d - 1)](j + 1, p);
                    rhs -= term;
                    mag += std::abs(term);
                }
                cur(j + 1, p) = rhs / denom;
                if (std::abs(rhs) > 0.0) {
                    table.conditioning = std::max(table.conditioning, mag / std::abs(rhs));
                }
            }
        }
    }
    return table;
}

SorfTable evaluate_at_nodes(const DiscreteSobolevSpec& spec, const IEPSolution& sol)
{
    std::vector<Scalar> z;
    z.reserve(spec.nodes.size());
    for (const auto& node : spec.nodes) {
        z.push_back(node.z);
    }
    return evaluate_sorfs(sol.pencil, sol.wnorm, z, spec.max_order());
}

Matrix discrete_moment_matrix(const DiscreteSobolevSpec& spec, const SorfTable& table)
{
    if (table.points.size() != spec.nodes.size()) {
        throw InvalidArgument("discrete_moment_matrix: table has " +
                              std::to_string(table.points.size()) + " points, spec has " +
                              std::to_string(spec.nodes.size()) + " nodes");
    }
    if (table.max_deriv() < spec.max_order()) {
        throw InvalidArgument("discrete_moment_matrix: table lacks derivative orders");
    }
    const Index n = table.count();
    Matrix M = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < spec.nodes.size(); ++j) {
        const auto& node = spec.nodes[j];
        double factor = std::norm(node.weight);
        for (Index i = 0; i <= node.order(); ++i) {
            if (i > 0) {
                factor *= std::norm(node.alphas[static_cast<std::size_t>(i - 1)]) /
                          static_cast<double>(i * i);
            }
            const auto col = table.values[static_cast<std::size_t>(i)].col(static_cast<Index>(j));
            M.noalias() += factor * col * col.adjoint();
        }
    }
    // M(k, h) = sum r_k conj(r_h): the outer product above gives exactly that.
    return M;
}

namespace {

Matrix continuous_at_order(const GegenbauerSobolevConfig& config, const IEPSolution& sol,
                           Index n, std::size_t order)
{
    const QuadratureRule cc = clenshaw_curtis(order);
    std::vector<Scalar> t(cc.nodes.begin(), cc.nodes.end());
    const SorfTable table = evaluate_sorfs(sol.pencil, sol.wnorm, t, 1, n);
    const Matrix& v = table.values[0];
    const Matrix& dv = table.values[1];
    Matrix M = Matrix::Zero(n, n);
    for (std::size_t p = 0; p < cc.size(); ++p) {
        const double x = cc.nodes[p];
        const double base = std::max(0.0, 1.0 - x * x);
        if (base == 0.0 && config.mu < 0.0) {
            // Integrable endpoint singularity: leave the endpoint out.
            continue;
        }
        const double weight = cc.weights[p] * std::pow(base, config.mu);
        const auto col = v.col(static_cast<Index>(p));
        const auto dcol = dv.col(static_cast<Index>(p));
        M.noalias() += weight * (col * col.adjoint());
        M.noalias() += (weight * config.lambda) * (dcol * dcol.adjoint());
    }
    return M;
}

}  // namespace

ContinuousMoment continuous_moment_matrix(const GegenbauerSobolevConfig& config,
                                          const IEPSolution& sol, Index n, std::size_t cc_order,
                                          int max_doublings)
{
    const Index count = n == 0 ? sol.dim() : n;
    if (count > sol.dim()) {
        throw InvalidArgument("continuous_moment_matrix: n exceeds pencil size");
    }
    ContinuousMoment out;
    out.cc_order = cc_order;
    out.M = continuous_at_order(config, sol, count, cc_order);
    for (int step = 0; step < max_doublings; ++step) {
        const std::size_t next = 2 * out.cc_order;
        Matrix refined = continuous_at_order(config, sol, count, next);
        const double diff = (refined - out.M).cwiseAbs().maxCoeff() /
                            std::max(1.0, refined.cwiseAbs().maxCoeff());
        out.M = std::move(refined);
        out.cc_order = next;
        if (diff <= 1e-12) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double metric_recurrence(const JordanSystem& sys, const IEPSolution& sol)
{
    const Matrix lhs = sys.J * sol.Q * sol.pencil.K();
    const Matrix rhs = sol.Q * sol.pencil.H();
    const double denom = std::max(spectral_norm(lhs), spectral_norm(rhs));
    if (denom == 0.0) {
        return 0.0;
    }
    return spectral_norm(lhs - rhs) / denom;
}

double metric_poles(const IEPSolution& sol, const PoleList& poles)
{
    const Index m = sol.dim();
    if (static_cast<Index>(poles.size()) != std::max<Index>(m - 1, 0)) {
        throw InvalidArgument("metric_poles: pole list does not match pencil size");
    }
    const Matrix& H = sol.pencil.H();
    const Matrix& K = sol.pencil.K();
    double worst = 0.0;
    for (Index k = 0; k + 1 < m; ++k) {
        const Pole& psi = poles.psi[static_cast<std::size_t>(k)];
        const Scalar h = H(k + 1, k);
        const Scalar kk = K(k + 1, k);
        double err = 0.0;
        if (psi.is_infinite()) {
            err = kk == Scalar(0.0) ? 0.0
                  : h == Scalar(0.0) ? std::numeric_limits<double>::infinity()
                                     : std::abs(kk / h);
        } else if (kk == Scalar(0.0)) {
            err = std::numeric_limits<double>::infinity();
        } else {
            const Scalar target = psi.value();
            const double diff = std::abs(h / kk - target);
            err = target == Scalar(0.0) ? diff : diff / std::abs(target);
        }
        worst = std::max(worst, err);
    }
    return worst;
}

double metric_orthonormality(const IEPSolution& sol)
{
    const Index m = sol.Q.cols();
    return spectral_norm(sol.Q.adjoint() * sol.Q - Matrix::Identity(m, m));
}

double metric_sobolev(const Matrix& M)
{
    return spectral_norm(M - Matrix::Identity(M.rows(), M.cols()));
}

double metric_sobolev_leading(const Matrix& M, Index n)
{
    if (n > M.rows()) {
        throw InvalidArgument("metric_sobolev_leading: block larger than matrix");
    }
    return metric_sobolev(M.topLeftCorner(n, n));
}

double max_entry_deviation(const Matrix& M)
{
    if (M.size() == 0) {
        return 0.0;
    }
    return (M - Matrix::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
}

double table_agreement(const SorfTable& a, const SorfTable& b)
{
    if (a.count() != b.count() || a.max_deriv() != b.max_deriv() ||
        a.points.size() != b.points.size()) {
        throw InvalidArgument("table_agreement: tables have different shapes");
    }
    double worst = 0.0;
    const auto np = static_cast<Index>(a.points.size());
    for (Index k = 0; k < a.count(); ++k) {
        Index bd = 0;
        Index bp = 0;
        double big = -1.0;
        for (Index d = 0; d <= a.max_deriv(); ++d) {
            for (Index p = 0; p < np; ++p) {
                const double v = std::abs(a.at(k, d, p));
                if (v > big) {
                    big = v;
                    bd = d;
                    bp = p;
                }
            }
        }
        const Scalar pa = a.at(k, bd, bp);
        const Scalar pb = b.at(k, bd, bp);
        if (pa == Scalar(0.0)) {
            continue;
        }
        if (pb == Scalar(0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        for (Index d = 0; d <= a.max_deriv(); ++d) {
            for (Index p = 0; p < np; ++p) {
                worst = std::max(worst, std::abs(a.at(k, d, p) / pa - b.at(k, d, p) / pb));
            }
        }
    }
    return worst;
}

std::vector<std::string> invariant_violations(const JordanSystem& sys, const IEPSolution& sol,
                                              const PoleList& poles, double tol)
{
    std::vector<std::string> out;
    auto report = [&out](const std::string& what, double value) {
        std::ostringstream os;
        os << what << " = " << value;
        out.push_back(os.str());
    };
    const Index m = sys.dim();
    if (sol.dim() != m || sol.Q.rows() != m || sol.Q.cols() != m) {
        out.push_back("dimension mismatch");
        return out;
    }
    const double below = sol.pencil.below_subdiagonal();
    if (below > tol * sol.pencil.scale()) {
        report("entries below the subdiagonal", below);
    }
    for (Index k = 0; k + 1 < m; ++k) {
        try {
            (void)pole_at(sol.pencil, k);
        } catch (const DeflationError&) {
            report("reduced at position", static_cast<double>(k));
        }
    }
    const double ortho = metric_orthonormality(sol);
    if (ortho > tol) {
        report("orthonormality", ortho);
    }
    const double first = (sol.Q.col(0) - sys.w / sys.w.norm()).norm();
    if (first > tol) {
        report("first basis column", first);
    }
    if (std::abs(sol.wnorm - sys.w.norm()) > tol * sys.w.norm()) {
        report("weight norm", std::abs(sol.wnorm - sys.w.norm()));
    }
    const double rec = metric_recurrence(sys, sol);
    if (rec > tol) {
        report("recurrence", rec);
    }
    const double pol = metric_poles(sol, poles);
    if (pol > tol) {
        report("poles", pol);
    }
    return out;
}

}  // namespace sorf
