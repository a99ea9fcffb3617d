#include "sorf/updating.hpp"

#include <cmath>
#include <string>

namespace sorf {

namespace {

// Unit vector along (x, y) with a real nonnegative first component.
std::pair<Scalar, Scalar> normalized_direction(Scalar x, Scalar y)
{
    const double n = std::hypot(std::abs(x), std::abs(y));
    Scalar phase = 1.0;
    if (x != Scalar(0.0)) {
        phase = std::conj(x) / std::abs(x);
    } else if (y != Scalar(0.0)) {
        phase = std::conj(y) / std::abs(y);
    }
    return {x * phase / n, y * phase / n};
}

// Unitary right factor Z on columns (i, k) whose first column is (x, y)/|.|.
PlaneRotation right_factor_with_first_column(Scalar x, Scalar y, Index i, Index k)
{
    const auto [v0, v1] = normalized_direction(x, y);
    if (v1 == Scalar(0.0)) {
        return PlaneRotation::identity(i, k);
    }
    return rotation_zeroing(v0, v1, i, k).adjoint();
}

// Replace (h, k) by its projection onto the line nu h = mu k, |(mu, nu)| = 1.
// Used where the ratio is known exactly but the pair came out of a rotation
// with rounding relative to a larger row; the change is |nu h - mu k|.
void project_onto_ratio(Scalar& h, Scalar& k, Scalar mu, Scalar nu)
{
    const Scalar t = std::conj(mu) * h + std::conj(nu) * k;
    h = mu * t;
    k = nu * t;
}

std::pair<Scalar, Scalar> unit_pair(Scalar a, Scalar b)
{
    const double n = std::hypot(std::abs(a), std::abs(b));
    return {a / n, b / n};
}

void check_unreduced(const HessenbergPencil& pencil, Index col, const char* what)
{
    const double tol = kDeflationTol * pencil.scale();
    if (std::abs(pencil.H()(col + 1, col)) <= tol && std::abs(pencil.K()(col + 1, col)) <= tol) {
        throw DeflationError(std::string(what) + ": pencil is reduced at column " +
                             std::to_string(col));
    }
}

}  // namespace

void absorb_basis(Matrix& Q, const EquivalenceStep& step)
{
    if (step.left) {
        apply_right(step.left->adjoint(), Q);
    }
}

IEPSolution single_block_solution(const SobolevNode& node)
{
    const JordanSystem blk = build_jordan_block(node);
    const Index n = blk.dim();
    if (node.weight == Scalar(0.0)) {
        throw InvalidArgument("single_block_solution: zero weight");
    }
    const Matrix reversal = Matrix::Identity(n, n).rowwise().reverse();
    const Scalar phase = node.weight / std::abs(node.weight);

    IEPSolution sol;
    sol.pencil = HessenbergPencil(reversal * blk.J * reversal, Matrix::Identity(n, n));
    sol.Q = phase * reversal;
    sol.wnorm = std::abs(node.weight);
    return sol;
}

IEPSolution embed(const IEPSolution& hat, const IEPSolution& blk)
{
    if (hat.dim() == 0) {
        return blk;
    }
    if (blk.dim() == 0) {
        throw InvalidArgument("embed: empty block");
    }
    const Index a = hat.dim();
    const Index b = blk.dim();
    const Index m = a + b;
    Matrix h = Matrix::Zero(m, m);
    Matrix k = Matrix::Zero(m, m);
    Matrix q = Matrix::Zero(m, m);
    h.topLeftCorner(a, a) = hat.pencil.H();
    h.bottomRightCorner(b, b) = blk.pencil.H();
    k.topLeftCorner(a, a) = hat.pencil.K();
    k.bottomRightCorner(b, b) = blk.pencil.K();
    q.topLeftCorner(a, a) = hat.Q;
    q.bottomRightCorner(b, b) = blk.Q;

    IEPSolution out;
    out.pencil = HessenbergPencil(std::move(h), std::move(k));
    out.Q = std::move(q);
    out.wnorm = std::hypot(hat.wnorm, blk.wnorm);
    return out;
}

PlaneRotation weight_rotation(double hat_norm, Scalar w_sigma, Index m, Index block_order)
{
    const Index row = m - block_order - 1;
    if (row <= 0 || row >= m) {
        throw InvalidArgument("weight_rotation: block of order " + std::to_string(block_order) +
                              " does not fit a pencil of size " + std::to_string(m));
    }
    if (hat_norm == 0.0 && w_sigma == Scalar(0.0)) {
        throw InvalidArgument("weight_rotation: total weight is zero");
    }
    return rotation_zeroing_or_identity(hat_norm, std::abs(w_sigma), 0, row);
}

EquivalenceStep op1_eliminate(HessenbergPencil& pencil, Index row, Index col)
{
    const Index m = pencil.dim();
    const Index pivot = col + 1;
    if (col < 0 || row <= pivot || row >= m) {
        throw InvalidArgument("op1_eliminate: target (" + std::to_string(row) + ", " +
                              std::to_string(col) + ") is not below the subdiagonal");
    }
    Matrix& H = pencil.H();
    Matrix& K = pencil.K();
    if (H(row, col) == Scalar(0.0) && K(row, col) == Scalar(0.0)) {
        return {};
    }
    const double tol = kDeflationTol * pencil.scale();
    const Scalar delta = H(pivot, col);
    const Scalar beta = K(pivot, col);
    if (std::abs(delta) <= tol && std::abs(beta) <= tol) {
        throw DeflationError("op1_eliminate: pivot pair vanishes at column " + std::to_string(col));
    }

    // M = beta A - delta B has a vanishing first row; its null vector makes
    // the first columns of A Z and B Z colinear with ratio delta / beta.
    const Scalar m10 = beta * H(row, col) - delta * K(row, col);
    const Scalar m11 = beta * H(row, row) - delta * K(row, row);
    const Scalar m00 = beta * H(pivot, col) - delta * K(pivot, col);
    const Scalar m01 = beta * H(pivot, row) - delta * K(pivot, row);
    const bool use_bottom = std::hypot(std::abs(m10), std::abs(m11)) >=
                            std::hypot(std::abs(m00), std::abs(m01));
    const Scalar x = use_bottom ? m10 : m00;
    const Scalar y = use_bottom ? m11 : m01;

    EquivalenceStep step;
    if (x != Scalar(0.0) || y != Scalar(0.0)) {
        const PlaneRotation z = right_factor_with_first_column(y, -x, col, row);
        if (!z.is_identity()) {
            pencil.apply_right(z);
            step.right = z;
        }
    }

    const double na = std::hypot(std::abs(H(pivot, col)), std::abs(H(row, col)));
    const double nb = std::hypot(std::abs(K(pivot, col)), std::abs(K(row, col)));
    const Matrix& src = na >= nb ? H : K;
    const PlaneRotation g = rotation_zeroing_or_identity(src(pivot, col), src(row, col), pivot, row);
    if (!g.is_identity()) {
        pencil.apply_left(g);
        step.left = g;
    }
    H(row, col) = 0.0;
    K(row, col) = 0.0;
    const auto [dn, bn] = unit_pair(delta, beta);
    project_onto_ratio(H(pivot, col), K(pivot, col), dn, bn);
    return step;
}

std::size_t restore_schedule_size(Index m, Index block_order)
{
    const Index s = block_order;
    if (m - s - 1 < 1) {
        return 0;
    }
    return static_cast<std::size_t>((m - s - 2) * (s + 1) + s * (s + 1) / 2);
}

RestoreStats restore_hessenberg(IEPSolution& sol, Index block_order)
{
    HessenbergPencil& pencil = sol.pencil;
    const Index m = pencil.dim();
    const Index hat = m - block_order - 1;
    if (block_order < 0 || hat < 1) {
        throw InvalidArgument("restore_hessenberg: block order " + std::to_string(block_order) +
                              " does not fit a pencil of size " + std::to_string(m));
    }
    RestoreStats stats;
    for (Index col = 0; col + 2 < m; ++col) {
        const Index first_row = col <= hat - 2 ? hat : col + 2;
        for (Index row = first_row; row < m; ++row) {
            ++stats.scheduled;
            if (pencil.H()(row, col) == Scalar(0.0) && pencil.K()(row, col) == Scalar(0.0)) {
                continue;
            }
            ++stats.eliminations;
            absorb_basis(sol.Q, op1_eliminate(pencil, row, col));
        }
    }
    const double residue = pencil.below_subdiagonal();
    if (residue > 1e-13 * pencil.scale()) {
        throw NumericalError("restore_hessenberg: entries below the subdiagonal remain (" +
                             std::to_string(residue) + ")");
    }
    pencil.clear_below_subdiagonal();
    return stats;
}

EquivalenceStep op2_add_pole(HessenbergPencil& pencil, const Pole& psi)
{
    const Index m = pencil.dim();
    if (m < 2) {
        throw InvalidArgument("op2_add_pole: pencil has no subdiagonal");
    }
    Matrix& H = pencil.H();
    Matrix& K = pencil.K();
    const auto [mu, nu] = psi.homogeneous();
    const Index a = m - 2;
    const Index b = m - 1;
    // Choose Z e_1 = z with [h_{m,m-1} h_{m,m}] z : [k_{m,m-1} k_{m,m}] z = mu : nu.
    const Scalar x = nu * H(b, a) - mu * K(b, a);
    const Scalar y = nu * H(b, b) - mu * K(b, b);

    EquivalenceStep step;
    if (x != Scalar(0.0)) {
        const PlaneRotation z = right_factor_with_first_column(y, -x, a, b);
        if (!z.is_identity()) {
            pencil.apply_right(z);
            step.right = z;
        }
    }
    // The new pair may be small next to the rest of the row.
    project_onto_ratio(H(b, a), K(b, a), mu, nu);
    check_unreduced(pencil, a, "op2_add_pole");
    return step;
}

EquivalenceStep op3_swap_adjacent(HessenbergPencil& pencil, Index col)
{
    const Index m = pencil.dim();
    if (col < 0 || col + 2 >= m) {
        throw InvalidArgument("op3_swap_adjacent: column " + std::to_string(col) +
                              " has no successor pole");
    }
    check_unreduced(pencil, col, "op3_swap_adjacent");
    check_unreduced(pencil, col + 1, "op3_swap_adjacent");

    Matrix& H = pencil.H();
    Matrix& K = pencil.K();
    const Index r0 = col + 1;
    const Index r1 = col + 2;
    const Index c0 = col;
    const Index c1 = col + 1;

    const Scalar tau = H(r0, c0);
    const Scalar kappa = K(r0, c0);
    const Scalar mu_raw = H(r1, c1);
    const Scalar nu_raw = K(r1, c1);
    const double n_sec = std::hypot(std::abs(mu_raw), std::abs(nu_raw));
    const Scalar mu = mu_raw / n_sec;
    const Scalar nu = nu_raw / n_sec;

    // Z = nu A - mu B is zero in its second row; Z v = 0 makes A v, B v parallel.
    const Scalar z00 = nu * tau - mu * kappa;
    const Scalar z01 = nu * H(r0, c1) - mu * K(r0, c1);

    EquivalenceStep step;
    if (z00 != Scalar(0.0) || z01 != Scalar(0.0)) {
        const PlaneRotation z = right_factor_with_first_column(z01, -z00, c0, c1);
        if (!z.is_identity()) {
            pencil.apply_right(z);
            step.right = z;
        }
    }
    const double na = std::hypot(std::abs(H(r0, c0)), std::abs(H(r1, c0)));
    const double nb = std::hypot(std::abs(K(r0, c0)), std::abs(K(r1, c0)));
    const Matrix& src = na >= nb ? H : K;
    const PlaneRotation g = rotation_zeroing_or_identity(src(r0, c0), src(r1, c0), r0, r1);
    if (!g.is_identity()) {
        pencil.apply_left(g);
        step.left = g;
    }
    H(r1, c0) = 0.0;
    K(r1, c0) = 0.0;
    project_onto_ratio(H(r0, c0), K(r0, c0), mu, nu);
    const auto [tn, kn] = unit_pair(tau, kappa);
    project_onto_ratio(H(r1, c1), K(r1, c1), tn, kn);
    return step;
}

std::size_t place_poles(IEPSolution& sol, Index first, std::span<const Pole> poles)
{
    const Index m = sol.dim();
    const auto count = static_cast<Index>(poles.size());
    if (count == 0) {
        return 0;
    }
    if (first < 0 || first + count > m - 1) {
        throw InvalidArgument("place_poles: positions " + std::to_string(first) + ".." +
                              std::to_string(first + count - 1) + " exceed pencil size " +
                              std::to_string(m));
    }
    std::size_t swaps = 0;
    for (Index i = 0; i < count; ++i) {
        const Index target = first + i;
        absorb_basis(sol.Q, op2_add_pole(sol.pencil, poles[static_cast<std::size_t>(i)]));
        for (Index k = m - 3; k >= target; --k) {
            absorb_basis(sol.Q, op3_swap_adjacent(sol.pencil, k));
            ++swaps;
        }
    }
    return swaps;
}

IEPSolution empty_solution()
{
    IEPSolution sol;
    sol.pencil = HessenbergPencil(Matrix(0, 0), Matrix(0, 0));
    sol.Q = Matrix(0, 0);
    return sol;
}

IEPSolution add_block(const IEPSolution& current, const SobolevNode& node,
                      std::span<const Pole> new_poles, RestoreStats* stats)
{
    const Index s = node.order();
    IEPSolution blk = single_block_solution(node);
    if (current.dim() == 0) {
        if (static_cast<Index>(new_poles.size()) != s) {
            throw InvalidArgument("add_block: first block of order " + std::to_string(s) +
                                  " takes " + std::to_string(s) + " poles");
        }
        place_poles(blk, 0, new_poles);
        return blk;
    }
    if (static_cast<Index>(new_poles.size()) != s + 1) {
        throw InvalidArgument("add_block: block of order " + std::to_string(s) + " takes " +
                              std::to_string(s + 1) + " poles");
    }
    const Index hat = current.dim();
    IEPSolution sol = embed(current, blk);
    const Index m = sol.dim();

    const PlaneRotation g = weight_rotation(current.wnorm, node.weight, m, s);
    sol.pencil.apply_left(g);
    apply_right(g.adjoint(), sol.Q);

    const RestoreStats st = restore_hessenberg(sol, s);
    if (stats != nullptr) {
        *stats = st;
    }
    place_poles(sol, hat - 1, new_poles);
    return sol;
}

IEPSolution solve_updating(const DiscreteSobolevSpec& spec, const PoleList& poles)
{
    spec.validate();
    const Index m = spec.dim();
    if (static_cast<Index>(poles.size()) != m - 1) {
        throw InvalidArgument("solve_updating: expected " + std::to_string(m - 1) +
                              " poles, got " + std::to_string(poles.size()));
    }
    const std::span<const Pole> psi(poles.psi);
    IEPSolution sol = empty_solution();
    for (const SobolevNode& node : spec.nodes) {
        const Index hat = sol.dim();
        const Index s = node.order();
        if (hat == 0) {
            sol = add_block(sol, node, psi.subspan(0, static_cast<std::size_t>(s)));
        } else {
            sol = add_block(sol, node,
                            psi.subspan(static_cast<std::size_t>(hat - 1),
                                        static_cast<std::size_t>(s + 1)));
        }
    }
    return sol;
}

}  // namespace sorf
