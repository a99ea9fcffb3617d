#include "sorf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sorf {

Eigen::Matrix2cd PlaneRotation::matrix() const
{
    Eigen::Matrix2cd g;
    g << std::conj(c), std::conj(s), -s, c;
    return g;
}

PlaneRotation rotation_zeroing(Scalar x, Scalar y, Index i, Index k)
{
    if (i == k) {
        throw InvalidArgument("rotation_zeroing: row indices must differ");
    }
    const double r = std::hypot(std::abs(x), std::abs(y));
    if (r == 0.0) {
        throw DegenerateRotation("rotation_zeroing: both entries are zero");
    }
    return {x / r, y / r, i, k};
}

PlaneRotation rotation_zeroing_or_identity(Scalar x, Scalar y, Index i, Index k)
{
    if (y == Scalar(0.0)) {
        // Keep the identity when nothing needs zeroing; a pure phase would
        // only rescale the row.
        return PlaneRotation::identity(i, k);
    }
    return rotation_zeroing(x, y, i, k);
}

namespace {

void check_indices(const PlaneRotation& g, Index n, const char* what)
{
    if (g.i < 0 || g.k < 0 || g.i >= n || g.k >= n || g.i == g.k) {
        throw InvalidArgument(std::string(what) + ": rotation indices (" + std::to_string(g.i) +
                              ", " + std::to_string(g.k) + ") out of range for dimension " +
                              std::to_string(n));
    }
}

}  // namespace

void apply_left(const PlaneRotation& g, Matrix& m)
{
    check_indices(g, m.rows(), "apply_left");
    if (g.is_identity()) {
        return;
    }
    const Scalar cc = std::conj(g.c);
    const Scalar cs = std::conj(g.s);
    for (Index col = 0; col < m.cols(); ++col) {
        const Scalar top = m(g.i, col);
        const Scalar bot = m(g.k, col);
        m(g.i, col) = cc * top + cs * bot;
        m(g.k, col) = -g.s * top + g.c * bot;
    }
}

void apply_right(const PlaneRotation& g, Matrix& m)
{
    check_indices(g, m.cols(), "apply_right");
    if (g.is_identity()) {
        return;
    }
    const Scalar cc = std::conj(g.c);
    const Scalar cs = std::conj(g.s);
    for (Index row = 0; row < m.rows(); ++row) {
        const Scalar left = m(row, g.i);
        const Scalar right = m(row, g.k);
        m(row, g.i) = left * cc - right * g.s;
        m(row, g.k) = left * cs + right * g.c;
    }
}

Scalar Pole::value() const
{
    if (is_infinite()) {
        throw InvalidArgument("Pole::value: pole is infinite");
    }
    return mu_ / nu_;
}

std::pair<Scalar, Scalar> Pole::homogeneous() const
{
    const double n = std::hypot(std::abs(mu_), std::abs(nu_));
    return {mu_ / n, nu_ / n};
}

bool Pole::operator==(const Pole& other) const
{
    if (is_infinite() || other.is_infinite()) {
        return is_infinite() == other.is_infinite();
    }
    return value() == other.value();
}

HessenbergPencil::HessenbergPencil(Matrix h, Matrix k) : h_(std::move(h)), k_(std::move(k))
{
    if (h_.rows() != h_.cols() || k_.rows() != k_.cols() || h_.rows() != k_.rows()) {
        throw InvalidArgument("HessenbergPencil: H and K must be square of equal size");
    }
}

double HessenbergPencil::scale() const
{
    return std::max(h_.norm(), k_.norm());
}

void HessenbergPencil::apply_left(const PlaneRotation& g)
{
    sorf::apply_left(g, h_);
    sorf::apply_left(g, k_);
}

void HessenbergPencil::apply_right(const PlaneRotation& g)
{
    sorf::apply_right(g, h_);
    sorf::apply_right(g, k_);
}

double HessenbergPencil::below_subdiagonal() const
{
    double worst = 0.0;
    for (Index col = 0; col < dim(); ++col) {
        for (Index row = col + 2; row < dim(); ++row) {
            worst = std::max({worst, std::abs(h_(row, col)), std::abs(k_(row, col))});
        }
    }
    return worst;
}

void HessenbergPencil::clear_below_subdiagonal()
{
    for (Index col = 0; col < dim(); ++col) {
        for (Index row = col + 2; row < dim(); ++row) {
            h_(row, col) = 0.0;
            k_(row, col) = 0.0;
        }
    }
}

Pole pole_at(const HessenbergPencil& pencil, Index k)
{
    if (k < 0 || k + 1 >= pencil.dim()) {
        throw InvalidArgument("pole_at: column " + std::to_string(k) + " out of range");
    }
    const double tol = kDeflationTol * pencil.scale();
    const Scalar h = pencil.H()(k + 1, k);
    const Scalar kk = pencil.K()(k + 1, k);
    if (std::abs(h) <= tol && std::abs(kk) <= tol) {
        throw DeflationError("pole_at: pencil is reduced at column " + std::to_string(k));
    }
    if (std::abs(kk) <= tol) {
        return Pole::infinity();
    }
    return Pole(h / kk);
}

double spectral_norm(const Matrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace sorf
