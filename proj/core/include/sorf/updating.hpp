#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sorf/numerics.hpp"
#include "sorf/problem.hpp"

namespace sorf {

/// Solution of the Hessenberg pencil inverse eigenvalue problem:
///   J Q K = Q H,  Q unitary,  Q e_1 = w / ||w||_2,
/// with the poles of (H, K) on its subdiagonal.
struct IEPSolution {
    HessenbergPencil pencil;
    Matrix Q;
    double wnorm = 0.0;

    Index dim() const { return pencil.dim(); }
};

/// Rotations applied by one equivalence step (H, K) <- P (H, K) Z. The
/// operations below apply them to the pencil; the basis follows separately
/// through absorb_basis. An empty slot means the identity.
struct EquivalenceStep {
    std::optional<PlaneRotation> left;
    std::optional<PlaneRotation> right;
};

/// Fold the left rotation of a step into the basis: Q <- Q P^H.
void absorb_basis(Matrix& Q, const EquivalenceStep& step);

/// (H, K, Q) for a single Jordan block: K = I, Q = phase(w) * reversal,
/// H = reversal * J * reversal (the persymmetric transpose of the block).
IEPSolution single_block_solution(const SobolevNode& node);

/// Block-diagonal embedding of two solutions. The weight condition of the
/// result does not hold until weight_rotation is applied.
IEPSolution embed(const IEPSolution& hat, const IEPSolution& blk);

/// Rotation on rows (0, m - s - 1) that maps the first basis column of the
/// embedded solution onto w / ||w||. Identity when w_sigma = 0.
PlaneRotation weight_rotation(double hat_norm, Scalar w_sigma, Index m, Index block_order);

/// Eliminate entry (row, col) of both H and K, row > col + 1, keeping the
/// pivot ratio h_{col+1,col} / k_{col+1,col}. The right rotation acts on
/// columns (col, row), the left rotation on rows (col + 1, row).
/// Throws DeflationError when the pivot pair vanishes.
EquivalenceStep op1_eliminate(HessenbergPencil& pencil, Index row, Index col);

struct RestoreStats {
    std::size_t eliminations = 0;  // targets that were nonzero before elimination
    std::size_t scheduled = 0;     // positions visited by the schedule
};

/// Closed-form number of positions visited by the restore schedule for a
/// pencil of size m after adding a block of order s:
///   ((m - 1) - (s + 1)) (s + 1) + s (s + 1) / 2.
std::size_t restore_schedule_size(Index m, Index block_order);

/// Bring the weight-rotated embedded pencil back to Hessenberg form by
/// Operation-1 eliminations. Columns 0..m-s-3 lose rows m-s-1..m-1, the
/// remaining columns c lose rows c+2..m-1. Row 0 is never touched.
RestoreStats restore_hessenberg(IEPSolution& sol, Index block_order);

/// Right rotation on the last two columns placing `psi` at position m - 2.
EquivalenceStep op2_add_pole(HessenbergPencil& pencil, const Pole& psi);

/// Exchange the poles at positions col and col + 1. Right rotation on
/// columns (col, col + 1), left rotation on rows (col + 1, col + 2).
EquivalenceStep op3_swap_adjacent(HessenbergPencil& pencil, Index col);

/// Place `poles` at positions first, first + 1, ... m - 2: each pole enters
/// at m - 2 through op2_add_pole and is swapped down to its slot.
/// Returns the number of swaps performed.
std::size_t place_poles(IEPSolution& sol, Index first, std::span<const Pole> poles);

/// Add one Jordan block to `current`. When `current` is empty this is the
/// single-block solution plus s poles; otherwise new_poles has s + 1 entries
/// for positions m_hat - 1 .. m - 2, deepest target first.
IEPSolution add_block(const IEPSolution& current, const SobolevNode& node,
                      std::span<const Pole> new_poles, RestoreStats* stats = nullptr);

/// Solve the inverse eigenvalue problem by adding nodes one at a time.
IEPSolution solve_updating(const DiscreteSobolevSpec& spec, const PoleList& poles);

/// A solution with no rows; the starting point of add_block.
IEPSolution empty_solution();

}  // namespace sorf
