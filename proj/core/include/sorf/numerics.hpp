#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

#include "sorf/errors.hpp"

namespace sorf {

using Scalar = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Relative threshold below which a subdiagonal pair counts as deflated.
inline constexpr double kDeflationTol = 1e-14;

/// A 2x2 unitary embedded in the identity at rows (or columns) i < k.
///
///     G = [ conj(c)  conj(s) ]
///         [   -s        c    ]
///
/// with |c|^2 + |s|^2 = 1. Left application mixes rows i and k, right
/// application mixes columns i and k.
struct PlaneRotation {
    Scalar c{1.0};
    Scalar s{0.0};
    Index i = 0;
    Index k = 1;

    static PlaneRotation identity(Index i, Index k) { return {Scalar(1.0), Scalar(0.0), i, k}; }

    // Conjugate transpose, acting on the same index pair.
    PlaneRotation adjoint() const { return {std::conj(c), -s, i, k}; }

    bool is_identity() const { return s == Scalar(0.0) && c == Scalar(1.0); }

    Eigen::Matrix2cd matrix() const;
};

/// Rotation G on (i, k) with G * [x; y] = [r; 0], r = sqrt(|x|^2 + |y|^2) >= 0.
/// Throws DegenerateRotation when x = y = 0.
PlaneRotation rotation_zeroing(Scalar x, Scalar y, Index i, Index k);

/// Same as rotation_zeroing but returns the identity when both inputs vanish.
PlaneRotation rotation_zeroing_or_identity(Scalar x, Scalar y, Index i, Index k);

/// M <- G * M (rows i and k change).
void apply_left(const PlaneRotation& g, Matrix& m);

/// M <- M * G (columns i and k change).
void apply_right(const PlaneRotation& g, Matrix& m);

/// A point of the extended complex plane. Stored homogeneously as (mu : nu)
/// so that infinity is (1 : 0) and no quotient is ever formed internally.
class Pole {
public:
    Pole() = default;  // infinity
    Pole(Scalar value) : mu_(value), nu_(1.0) {}  // NOLINT: implicit on purpose
    Pole(double value) : mu_(value), nu_(1.0) {}  // NOLINT

    static Pole infinity() { return Pole(); }

    bool is_infinite() const { return nu_ == Scalar(0.0); }
    Scalar value() const;  // throws InvalidArgument on infinity

    // Homogeneous pair (mu, nu) with pole = mu / nu, normalized to unit length.
    std::pair<Scalar, Scalar> homogeneous() const;

    bool operator==(const Pole& other) const;

private:
    Scalar mu_{1.0};
    Scalar nu_{0.0};
};

/// Pair (H, K) of square upper Hessenberg matrices.
class HessenbergPencil {
public:
    HessenbergPencil() = default;
    HessenbergPencil(Matrix h, Matrix k);

    Index dim() const { return h_.rows(); }
    const Matrix& H() const { return h_; }
    const Matrix& K() const { return k_; }
    Matrix& H() { return h_; }
    Matrix& K() { return k_; }

    // max(||H||_F, ||K||_F); all relative tolerances refer to this.
    double scale() const;

    void apply_left(const PlaneRotation& g);
    void apply_right(const PlaneRotation& g);

    // Largest |entry| strictly below the first subdiagonal, over H and K.
    double below_subdiagonal() const;

    // Replace entries below the first subdiagonal by exact zeros.
    void clear_below_subdiagonal();

private:
    Matrix h_;
    Matrix k_;
};

/// Ratio h_{k+1,k} / k_{k+1,k} for the 0-based column k (0 <= k <= m-2).
/// Infinity when |k_{k+1,k}| is negligible; DeflationError when both are.
Pole pole_at(const HessenbergPencil& pencil, Index k);

/// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace sorf
