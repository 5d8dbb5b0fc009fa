#pragma once

#include <span>
#include <utility>

#include "hheat/grid.hpp"

namespace hheat {

// Finite differences for the Kohn sub-Laplacian on a tau-compatible H^1 grid.
//
// X = d/dx - 2y d/dtau and Y = d/dy + 2x d/dtau have straight integral lines;
// the node (i, j, k) is joined to (i+-1, j, k -+ m*cj) along X and to
// (i, j+-1, k +- m*ci) along Y. Second differences along those lines give
//   L u = (u(X+) - 2u + u(X-))/hx^2 + (u(Y+) - 2u + u(Y-))/hy^2,
// second order, exact on polynomials of degree <= 3 along each line, with
// nonnegative off-diagonal weights. Neighbours outside the box read as 0 and
// boundary nodes of the result are 0 (homogeneous Dirichlet closure).

/// Raw form used by the time steppers; `out` must not alias `in`.
void apply_sublaplacian(const GridSpec& grid, std::span<const double> in, std::span<double> out);

Field apply_sublaplacian(const Field& u);

/// Centred first differences of X u and Y u along the same lines.
std::pair<Field, Field> apply_horizontal_gradient(const Field& u);

/// Expanded-form discretisation
///   u_xx + u_yy + 4(x^2+y^2) u_tautau + 4x u_ytau - 4y u_xtau
/// with 4-point cross stencils for the mixed terms. Works on any grid; its
/// mixed-term weights change sign, so it is not used for time stepping.
Field apply_sublaplacian_expanded(const Field& u);

/// True when all four translated neighbours of an interior node lie in the box.
bool stencil_in_box(const GridSpec& grid, std::size_t i, std::size_t j, std::size_t k);

}  // namespace hheat
