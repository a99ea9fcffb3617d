#include "sorf/reference.hpp"

#include <cmath>
#include <string>

namespace sorf {

IEPSolution solve_via_sop(const DiscreteSobolevSpec& spec, const PoleList& poles)
{
    const Index m = spec.dim();
    if (static_cast<Index>(poles.size()) != m - 1) {
        throw InvalidArgument("solve_via_sop: expected " + std::to_string(m - 1) + " poles");
    }
    PoleList polynomial;
    polynomial.psi.assign(poles.size(), Pole::infinity());
    IEPSolution sol = solve_updating(spec, polynomial);

    // (H, K) -> (H K^{-1}, I); K is upper triangular when every pole is infinite.
    const Matrix kinv_h = sol.pencil.K().triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(
        sol.pencil.H());
    sol.pencil = HessenbergPencil(kinv_h, Matrix::Identity(m, m));
    sol.pencil.clear_below_subdiagonal();

    for (Index i = 0; i + 1 < m; ++i) {
        const Pole& p = poles.psi[static_cast<std::size_t>(i)];
        if (p.is_infinite()) {
            continue;
        }
        place_poles(sol, i, std::span<const Pole>(&p, 1));
    }
    return sol;
}

namespace {

// Solve (J - psi I) x = b for block upper bidiagonal J.
Vector shifted_solve(const Matrix& J, Scalar psi, const Vector& b)
{
    const Index m = J.rows();
    Vector x(m);
    const double scale = J.cwiseAbs().maxCoeff() + std::abs(psi);
    for (Index i = m - 1; i >= 0; --i) {
        const Scalar d = J(i, i) - psi;
        if (std::abs(d) <= 1e-14 * scale) {
            throw SpectrumOverlapError("rational_arnoldi: pole coincides with an eigenvalue of J");
        }
        Scalar rhs = b(i);
        if (i + 1 < m) {
            rhs -= J(i, i + 1) * x(i + 1);
        }
        x(i) = rhs / d;
    }
    return x;
}

}  // namespace

IEPSolution rational_arnoldi(const JordanSystem& sys, const PoleList& poles)
{
    const Index m = sys.dim();
    if (m == 0) {
        throw InvalidArgument("rational_arnoldi: empty system");
    }
    if (static_cast<Index>(poles.size()) != m - 1) {
        throw InvalidArgument("rational_arnoldi: expected " + std::to_string(m - 1) + " poles");
    }
    const double wnorm = sys.w.norm();
    if (!(wnorm > 0.0)) {
        throw InvalidArgument("rational_arnoldi: zero starting vector");
    }

    Matrix Q = Matrix::Zero(m, m);
    Matrix H = Matrix::Zero(m, m);
    Matrix K = Matrix::Zero(m, m);
    Q.col(0) = sys.w / wnorm;

    for (Index j = 0; j + 1 < m; ++j) {
        const Pole& psi = poles.psi[static_cast<std::size_t>(j)];
        Vector x = psi.is_infinite() ? Vector(sys.J * Q.col(j))
                                     : shifted_solve(sys.J, psi.value(), Q.col(j));
        const double xnorm = x.norm();
        Vector c = Vector::Zero(j + 2);
        for (int pass = 0; pass < 2; ++pass) {
            const Vector proj = Q.leftCols(j + 1).adjoint() * x;
            x -= Q.leftCols(j + 1) * proj;
            c.head(j + 1) += proj;
        }
        const double next = x.norm();
        if (!(next > 1e-14 * xnorm)) {
            throw BreakdownError("rational_arnoldi: Krylov space exhausted at step " +
                                 std::to_string(j));
        }
        c(j + 1) = next;
        Q.col(j + 1) = x / next;

        if (psi.is_infinite()) {
            H.col(j).head(j + 2) = c;
            K(j, j) = 1.0;
        } else {
            const Scalar p = psi.value();
            K.col(j).head(j + 2) = c;
            H.col(j).head(j + 2) = p * c;
            H(j, j) += 1.0;
            if (p != Scalar(0.0)) {
                const Scalar phase = std::conj(p) / std::abs(p);
                H.col(j) *= phase;
                K.col(j) *= phase;
            }
        }
    }
    // Final column: J q_m lies in the span of Q.
    const Vector last = sys.J * Q.col(m - 1);
    H.col(m - 1) = Q.adjoint() * last;
    K(m - 1, m - 1) = 1.0;

    const double ortho = spectral_norm(Q.adjoint() * Q - Matrix::Identity(m, m));
    if (ortho > 1e-10) {
        throw BreakdownError("rational_arnoldi: loss of orthogonality " + std::to_string(ortho));
    }

    IEPSolution sol;
    sol.pencil = HessenbergPencil(std::move(H), std::move(K));
    sol.Q = std::move(Q);
    sol.wnorm = wnorm;
    return sol;
}

}  // namespace sorf
