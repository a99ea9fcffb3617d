#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"

using namespace sorf;
using sorf::testing::Rng;

namespace {

// int_{-1}^{1} t^k (1 - t^2)^mu dt
double gegenbauer_moment(int k, double mu)
{
    if (k % 2 == 1) {
        return 0.0;
    }
    const double a = 0.5 * k + 0.5;
    return std::exp(std::lgamma(a) + std::lgamma(mu + 1.0) - std::lgamma(a + mu + 1.0));
}

// Reference for int f(t) (1 - t^2)^mu dt, mu >= 0, by a fine Clenshaw-Curtis rule.
Scalar cc_reference(const std::function<Scalar(double)>& f, double mu, std::size_t n = 4001)
{
    const QuadratureRule cc = clenshaw_curtis(n);
    Scalar sum = 0.0;
    for (std::size_t j = 0; j < cc.size(); ++j) {
        const double t = cc.nodes[j];
        sum += cc.weights[j] * std::pow(std::max(0.0, 1.0 - t * t), mu) * f(t);
    }
    return sum;
}

Scalar q_of(const std::vector<Scalar>& poles, double t)
{
    Scalar q = 1.0;
    for (const Scalar& xi : poles) {
        q *= t - xi;
    }
    return q;
}

}  // namespace

TEST_CASE("gegenbauer_mass closed forms")
{
    CHECK(gegenbauer_mass(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gegenbauer_mass(2.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
    CHECK(gegenbauer_mass(0.5) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(gegenbauer_mass(-0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("Gauss-Legendre two-point rule")
{
    const QuadratureRule r = gauss_gegenbauer(0.0, 2);
    REQUIRE(r.size() == 2);
    CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.provenance == RuleProvenance::gegenbauer);
}

TEST_CASE("Gauss-Chebyshev nodes and weights for mu = -1/2")
{
    for (std::size_t n : {1u, 4u, 9u, 16u}) {
        const QuadratureRule r = gauss_gegenbauer(-0.5, n);
        for (std::size_t j = 0; j < n; ++j) {
            // increasing order: cos((2(n-j)-1) pi / (2n))
            const double expect = std::cos((2.0 * static_cast<double>(n - j) - 1.0) *
                                           std::numbers::pi / (2.0 * static_cast<double>(n)));
            CHECK(r.nodes[j] == doctest::Approx(expect).epsilon(1e-13));
            CHECK(r.weights[j] ==
                  doctest::Approx(std::numbers::pi / static_cast<double>(n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Gauss-Gegenbauer integrates moments up to degree 2n - 1")
{
    for (double mu : {-0.5, 0.0, 0.5, 2.0, 3.7}) {
        for (std::size_t n : {1u, 3u, 7u, 12u}) {
            const QuadratureRule r = gauss_gegenbauer(mu, n);
            for (int k = 0; k <= static_cast<int>(2 * n - 1); ++k) {
                const Scalar got = r.integrate([k](double t) { return std::pow(t, k); });
                CHECK(std::abs(got - gegenbauer_moment(k, mu)) < 1e-13);
            }
        }
    }
}

TEST_CASE("Gauss-Gegenbauer validates")
{
    CHECK_THROWS_AS(gauss_gegenbauer(-1.0, 3), InvalidArgument);
    CHECK_THROWS_AS(gauss_gegenbauer(1.0, 0), InvalidArgument);
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const QuadratureRule r = gauss_gegenbauer(rng.uniform(-0.9, 5.0), rng.integer(1, 40));
        CHECK_NOTHROW(validate_rule(r));
    }
}

TEST_CASE("Clenshaw-Curtis three-point rule is Simpson's rule")
{
    const QuadratureRule cc = clenshaw_curtis(3);
    REQUIRE(cc.size() == 3);
    CHECK(cc.nodes[0] == -1.0);
    CHECK(cc.nodes[1] == doctest::Approx(0.0));
    CHECK(cc.nodes[2] == 1.0);
    CHECK(cc.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(cc.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(cc.provenance == RuleProvenance::clenshaw_curtis);
}

TEST_CASE("Clenshaw-Curtis exactness and symmetry")
{
    for (std::size_t n : {2u, 5u, 16u, 33u, 400u}) {
        const QuadratureRule cc = clenshaw_curtis(n);
        CHECK_NOTHROW(validate_rule(cc));
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(cc.nodes[j] == -cc.nodes[n - 1 - j]);
            CHECK(std::abs(cc.weights[j] - cc.weights[n - 1 - j]) < 1e-15);
        }
        for (int k = 0; k < static_cast<int>(std::min<std::size_t>(n, 30)); ++k) {
            const Scalar got = cc.integrate([k](double t) { return std::pow(t, k); });
            CHECK(std::abs(got - gegenbauer_moment(k, 0.0)) < 1e-13);
        }
    }
    CHECK_THROWS_AS(clenshaw_curtis(1), InvalidArgument);
}

TEST_CASE("stieltjes_modified without poles reproduces the Gegenbauer recurrence")
{
    const QuadratureRule base = gauss_gegenbauer(2.0, 64);
    const ThreeTermCoefficients got = stieltjes_modified(base, {}, 12);
    const ThreeTermCoefficients ref = gegenbauer_recurrence(2.0, 12);
    REQUIRE(got.size() == 12);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(std::abs(got.alpha[k] - ref.alpha[k]) < 1e-13);
        CHECK(std::abs(got.beta[k] - ref.beta[k]) < 1e-13);
    }
}

TEST_CASE("stieltjes_modified total mass is sum w / q")
{
    const QuadratureRule base = gauss_gegenbauer(1.0, 40);
    const std::vector<Scalar> poles{-1.3, -1.3, Scalar(0.2, 1.5), Scalar(0.2, -1.5)};
    double mass = 0.0;
    for (std::size_t j = 0; j < base.size(); ++j) {
        mass += base.weights[j] / q_of(poles, base.nodes[j]).real();
    }
    const ThreeTermCoefficients rc = stieltjes_modified(base, poles, 5);
    CHECK(rc.beta[0] == doctest::Approx(mass).epsilon(1e-14));
}

TEST_CASE("rational_gauss integrates g / q exactly for deg g <= 2 sigma - 1")
{
    Rng rng(22);
    const std::vector<Scalar> poles{-1.1, 1.1, -1.1, 1.1, Scalar(0.0, 2.0), Scalar(0.0, -2.0)};
    for (double mu : {0.0, 2.0}) {
        const std::size_t sigma = 4;
        const QuadratureRule r = rational_gauss(mu, poles, sigma);
        CHECK(r.provenance == RuleProvenance::rational_gauss);
        CHECK_NOTHROW(validate_rule(r));
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> c(2 * sigma);
            for (double& v : c) {
                v = rng.uniform(-1.0, 1.0);
            }
            auto f = [&](double t) {
                Scalar g = 0.0;
                for (std::size_t k = c.size(); k-- > 0;) {
                    g = g * t + c[k];
                }
                return g / q_of(poles, t);
            };
            const Scalar ref = cc_reference(f, mu);
            CHECK(std::abs(r.integrate(f) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("rational_gauss without poles is Gauss-Gegenbauer")
{
    const QuadratureRule a = rational_gauss(2.0, {}, 6);
    const QuadratureRule b = gauss_gegenbauer(2.0, 6);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(std::abs(a.nodes[j] - b.nodes[j]) < 1e-13);
        CHECK(std::abs(a.weights[j] - b.weights[j]) < 1e-13);
    }
}

TEST_CASE("rational_gauss pole checks")
{
    const std::vector<Scalar> inside{0.5, 0.5};
    CHECK_THROWS_AS(rational_gauss(2.0, inside, 3), SpectrumOverlapError);
    const std::vector<Scalar> unpaired{1.5};
    CHECK_THROWS_AS(rational_gauss(2.0, unpaired, 3), PositivityError);
    const std::vector<Scalar> lone_complex{Scalar(0.0, 2.0)};
    CHECK_THROWS_AS(rational_gauss(2.0, lone_complex, 3), PositivityError);
}

TEST_CASE("validate_rule rejects malformed rules")
{
    QuadratureRule good{{-0.5, 0.5}, {1.0, 1.0}, RuleProvenance::imported};
    CHECK_NOTHROW(validate_rule(good));
    QuadratureRule negative = good;
    negative.weights[1] = -1.0;
    CHECK_THROWS_AS(validate_rule(negative), ValidationError);
    QuadratureRule unsorted = good;
    std::swap(unsorted.nodes[0], unsorted.nodes[1]);
    CHECK_THROWS_AS(validate_rule(unsorted), ValidationError);
    QuadratureRule duplicate = good;
    duplicate.nodes[1] = duplicate.nodes[0] + 1e-14;
    CHECK_THROWS_AS(validate_rule(duplicate), ValidationError);
    QuadratureRule mismatch = good;
    mismatch.weights.pop_back();
    CHECK_THROWS_AS(validate_rule(mismatch), ValidationError);
    QuadratureRule nan = good;
    nan.nodes[0] = std::nan("");
    CHECK_THROWS_AS(validate_rule(nan), ValidationError);
}

TEST_CASE("provenance strings round-trip")
{
    for (RuleProvenance p : {RuleProvenance::gegenbauer, RuleProvenance::rational_gauss,
                             RuleProvenance::clenshaw_curtis, RuleProvenance::imported}) {
        CHECK(provenance_from_string(to_string(p)) == p);
    }
    CHECK_THROWS_AS(provenance_from_string("chebfun"), ValidationError);
}
