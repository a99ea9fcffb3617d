#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fd_check.hpp"
#include "generators.hpp"

using namespace sorf;
using namespace sorf::testing;

namespace {

SorfTable table_at(const IEPSolution& sol, const std::vector<Scalar>& pts, Index d)
{
    return evaluate_sorfs(sol.pencil, sol.wnorm, pts, d);
}

}  // namespace

TEST_CASE("the first function is the constant 1 / ||w||")
{
    Rng rng(71);
    const DiscreteSobolevSpec spec = random_spec(rng, 4, 2);
    const IEPSolution sol = solve_updating(spec, random_pole_list(rng, spec));
    const std::vector<Scalar> pts{-0.3, 0.0, Scalar(0.4, 0.2)};
    const SorfTable t = table_at(sol, pts, 2);
    REQUIRE(t.count() == sol.dim());
    REQUIRE(t.max_deriv() == 2);
    for (Index p = 0; p < 3; ++p) {
        CHECK(t.at(0, 0, p) == Scalar(1.0 / spec.weight_norm()));
        CHECK(t.at(0, 1, p) == Scalar(0.0));
        CHECK(t.at(0, 2, p) == Scalar(0.0));
    }
}

TEST_CASE("a single node with no derivatives gives one constant function")
{
    DiscreteSobolevSpec spec;
    spec.nodes = {{0.3, {}, 2.0}};
    const IEPSolution sol = solve_updating(spec, default_pole_list({}, spec));
    const SorfTable t = evaluate_at_nodes(spec, sol);
    CHECK(t.count() == 1);
    CHECK(t.at(0, 0, 0) == Scalar(0.5));
    const Matrix M = discrete_moment_matrix(spec, t);
    CHECK(std::abs(M(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("values agree with Gram-Schmidt on {1, 1/(t - xi_k)}")
{
    // m = 4: two nodes with one derivative each, three finite poles.
    DiscreteSobolevSpec spec;
    spec.nodes = {{-0.4, {Scalar(1.0)}, 0.8}, {0.5, {Scalar(0.7)}, 0.6}};
    const std::vector<Scalar> xi{1.5, -2.0, Scalar(0.3, 1.2)};
    const PoleList poles = pole_list(to_poles(xi), {}, spec);
    const JordanSystem sys = build_jordan(spec);

    Matrix V(4, 4);
    V.col(0) = sys.w;
    for (Index i = 1; i < 4; ++i) {
        V.col(i) = resolvent_apply(sys, xi[static_cast<std::size_t>(i - 1)]);
    }
    const Eigen::HouseholderQR<Matrix> qr(V);
    const Matrix R = Matrix(qr.matrixQR().triangularView<Eigen::Upper>());
    const Matrix Rinv = R.inverse();

    const std::vector<Scalar> pts{-0.9, -0.1, 0.2, 0.77, Scalar(0.1, 0.4)};
    SorfTable oracle;
    oracle.points = pts;
    oracle.values.assign(2, Matrix::Zero(4, static_cast<Index>(pts.size())));
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const Scalar t = pts[p];
        Vector b(4);
        Vector db(4);
        b(0) = 1.0;
        db(0) = 0.0;
        for (Index i = 1; i < 4; ++i) {
            const Scalar u = 1.0 / (t - xi[static_cast<std::size_t>(i - 1)]);
            b(i) = u;
            db(i) = -u * u;
        }
        oracle.values[0].col(static_cast<Index>(p)) = Rinv.transpose() * b;
        oracle.values[1].col(static_cast<Index>(p)) = Rinv.transpose() * db;
    }
    for (const IEPSolution& sol : {solve_updating(spec, poles), solve_via_sop(spec, poles),
                                   rational_arnoldi(sys, poles)}) {
        const SorfTable t = table_at(sol, pts, 1);
        CHECK(table_agreement(t, oracle) < 1e-12);
    }
}

TEST_CASE("analytic derivatives match central differences")
{
    Rng rng(72);
    for (int trial = 0; trial < 10; ++trial) {
        const DiscreteSobolevSpec spec =
            random_spec(rng, static_cast<std::size_t>(rng.integer(2, 7)), 2);
        const IEPSolution sol = solve_updating(spec, random_pole_list(rng, spec));
        CHECK(worst_fd_ratio(rng, sol, 3, 10) < 1e-7);
    }
}

TEST_CASE("evaluation at a pole is rejected")
{
    DiscreteSobolevSpec spec;
    spec.nodes = {{-0.4, {Scalar(1.0)}, 0.8}, {0.5, {}, 0.6}};
    const PoleList poles = pole_list({Pole(1.5)}, {}, spec);
    const IEPSolution sol = solve_updating(spec, poles);
    const std::vector<Scalar> at_pole{1.5};
    CHECK_THROWS_AS(evaluate_sorfs(sol.pencil, sol.wnorm, at_pole, 0), PoleCollisionError);
    CHECK_NOTHROW(evaluate_sorfs(sol.pencil, sol.wnorm, at_pole, 0, 1));
    CHECK_THROWS_AS(evaluate_sorfs(sol.pencil, 0.0, at_pole, 0), InvalidArgument);
}

TEST_CASE("discrete moment matrix of every solver is the identity")
{
    Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const DiscreteSobolevSpec spec =
            random_spec(rng, static_cast<std::size_t>(rng.integer(1, 7)), 2);
        const PoleList poles = random_pole_list(rng, spec);
        const JordanSystem sys = build_jordan(spec);
        for (const IEPSolution& sol : {solve_updating(spec, poles), solve_via_sop(spec, poles),
                                       rational_arnoldi(sys, poles)}) {
            const Matrix M = discrete_moment_matrix(spec, evaluate_at_nodes(spec, sol));
            CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            CHECK(metric_sobolev(M) < 1e-9);
        }
    }
}

TEST_CASE("discrete moment matrix shape checks")
{
    DiscreteSobolevSpec spec;
    spec.nodes = {{-0.4, {Scalar(1.0)}, 0.8}, {0.5, {}, 0.6}};
    const IEPSolution sol = solve_updating(spec, default_pole_list({}, spec));
    const std::vector<Scalar> one{0.0};
    CHECK_THROWS_AS(discrete_moment_matrix(spec, evaluate_sorfs(sol.pencil, sol.wnorm, one, 1)),
                    InvalidArgument);
    const std::vector<Scalar> nodes{-0.4, 0.5};
    CHECK_THROWS_AS(discrete_moment_matrix(spec, evaluate_sorfs(sol.pencil, sol.wnorm, nodes, 0)),
                    InvalidArgument);
}

TEST_CASE("continuous moments reduce to Legendre orthonormality")
{
    const QuadratureRule rule = gauss_gegenbauer(0.0, 3);
    DiscreteSobolevSpec spec;
    for (std::size_t j = 0; j < 3; ++j) {
        spec.nodes.push_back({rule.nodes[j], {}, std::sqrt(rule.weights[j])});
    }
    const IEPSolution sol = solve_updating(spec, default_pole_list({}, spec));
    GegenbauerSobolevConfig legendre;
    legendre.mu = 0.0;
    legendre.lambda = 0.0;
    const ContinuousMoment mc = continuous_moment_matrix(legendre, sol, 2);
    CHECK(mc.converged);
    CHECK(max_entry_deviation(mc.M) < 1e-12);
    CHECK(mc.M.rows() == 2);
}

TEST_CASE("continuous moments of the Gegenbauer-Sobolev example")
{
    GegenbauerSobolevConfig c;
    c.mu = 2.0;
    c.lambda = 1.0;
    c.omega = 1.1;
    c.pole_pairs = 1;
    c.N = 3;
    const DiscreteSobolevSpec spec = discretize_gegenbauer(c);
    const PoleList poles = default_pole_list(to_poles(c.prescribed_poles()), spec);
    const IEPSolution sol = solve_updating(spec, poles);
    const ContinuousMoment mc = continuous_moment_matrix(c, sol);
    CHECK(mc.converged);
    CHECK((mc.M - mc.M.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * mc.M.cwiseAbs().maxCoeff());
    CHECK(max_entry_deviation(mc.M.topLeftCorner(3, 3)) < 1e-11);
    CHECK(max_entry_deviation(mc.M) > 1e-3);
    CHECK_THROWS_AS(continuous_moment_matrix(c, sol, 11), InvalidArgument);
}

TEST_CASE("recurrence metric")
{
    Rng rng(74);
    const DiscreteSobolevSpec spec = random_spec(rng, 5, 1);
    const JordanSystem sys = build_jordan(spec);
    const PoleList poles = random_pole_list(rng, spec);
    IEPSolution sol = rational_arnoldi(sys, poles);
    CHECK(metric_recurrence(sys, sol) < 1e-14);

    const double eps = 1e-8;
    const Matrix E = rng.complex_matrix(sys.dim(), sys.dim());
    const double base = std::max(spectral_norm(sys.J * sol.Q * sol.pencil.K()),
                                 spectral_norm(sol.Q * (sol.pencil.H() + eps * E)));
    sol.pencil = HessenbergPencil(sol.pencil.H() + eps * E, sol.pencil.K());
    const double expect = eps * spectral_norm(E) / base;
    CHECK(metric_recurrence(sys, sol) == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("pole metric conventions")
{
    Matrix H = Matrix::Zero(4, 4);
    Matrix K = Matrix::Zero(4, 4);
    H(1, 0) = 2.0;
    K(1, 0) = 1.0;  // 2
    H(2, 1) = 1.0;
    K(2, 1) = 1e-9;  // nearly infinite
    H(3, 2) = 1e-7;
    K(3, 2) = 1.0;  // nearly zero
    IEPSolution sol;
    sol.pencil = HessenbergPencil(H, K);
    sol.Q = Matrix::Identity(4, 4);
    PoleList poles{{Pole(2.0), Pole::infinity(), Pole(0.0)}, 3};
    CHECK(metric_poles(sol, poles) == doctest::Approx(1e-7));
    poles.psi[2] = Pole(1e-7);
    CHECK(metric_poles(sol, poles) == doctest::Approx(1e-9));
    poles.psi[0] = Pole(2.0 * (1.0 + 1e-6));
    CHECK(metric_poles(sol, poles) == doctest::Approx(1e-6 / (1.0 + 1e-6)).epsilon(1e-6));
    CHECK_THROWS_AS(metric_poles(sol, PoleList{{Pole(2.0)}, 1}), InvalidArgument);
}

TEST_CASE("orthonormality metric")
{
    Rng rng(75);
    const Eigen::HouseholderQR<Matrix> qr(rng.complex_matrix(6, 6));
    IEPSolution sol;
    sol.Q = qr.householderQ();
    sol.pencil = HessenbergPencil(Matrix::Identity(6, 6), Matrix::Identity(6, 6));
    CHECK(metric_orthonormality(sol) < 1e-14);
    sol.Q.col(3) *= 1.0 + 1e-6;
    CHECK(metric_orthonormality(sol) == doctest::Approx(2e-6 + 1e-12).epsilon(1e-6));
}

TEST_CASE("Sobolev metric")
{
    CHECK(metric_sobolev(Matrix::Identity(3, 3)) == 0.0);
    Matrix D = Matrix::Identity(3, 3);
    D(2, 2) = 2.0;
    CHECK(metric_sobolev(D) == doctest::Approx(1.0));
    CHECK(metric_sobolev_leading(D, 2) == 0.0);
    CHECK(max_entry_deviation(D) == doctest::Approx(1.0));
    CHECK_THROWS_AS(metric_sobolev_leading(D, 4), InvalidArgument);
}

TEST_CASE("table agreement ignores unimodular factors")
{
    Rng rng(76);
    const DiscreteSobolevSpec spec = random_spec(rng, 4, 1);
    const IEPSolution sol = solve_updating(spec, random_pole_list(rng, spec));
    SorfTable a = evaluate_at_nodes(spec, sol);
    SorfTable b = a;
    for (Index k = 0; k < b.count(); ++k) {
        const Scalar phase = std::polar(1.0, rng.uniform(0.0, 6.0));
        for (auto& v : b.values) {
            v.row(k) *= phase;
        }
    }
    CHECK(table_agreement(a, b) < 1e-15);
    b.values[0](1, 0) *= 1.0 + 1e-6;
    CHECK(table_agreement(a, b) > 1e-8);
    SorfTable c = a;
    c.values.pop_back();
    CHECK_THROWS_AS(table_agreement(a, c), InvalidArgument);
}

TEST_CASE("invariant suite flags a damaged solution")
{
    Rng rng(77);
    const DiscreteSobolevSpec spec = random_spec(rng, 3, 1);
    const JordanSystem sys = build_jordan(spec);
    const PoleList poles = random_pole_list(rng, spec);
    IEPSolution sol = solve_updating(spec, poles);
    CHECK(invariant_violations(sys, sol, poles).empty());
    sol.Q.col(0) *= -1.0;
    CHECK_FALSE(invariant_violations(sys, sol, poles).empty());
}
