#pragma once

// SU(2) spin squeezing and its SU(D) extension built from the D(D-1)/2
// embedded SU(2) subalgebras of level pairs i > j:
//   J_x = (S_ij + S_ji)/2,  J_y = i (S_ij - S_ji)/2,  J_z = (S_jj - S_ii)/2.

#include <map>
#include <utility>

#include "symqudit/basis.hpp"
#include "symqudit/moments.hpp"

namespace symqudit {

struct SqueezingReport {
    std::map<std::pair<int, int>, double> pairwise;  // (i, j) with i > j, 0-based
    double total = 0.0;
};

/// xi_ij^2 = [<S_ij S_ji + S_ji S_ij> - 2 |<S_ij^2>|] / (N (D-1)); needs i > j.
double xi_pair(const Moments& m, int i, int j);
double xi_pair(const SymmetricState& state, int i, int j);

SqueezingReport squeezing(const Moments& m);
/// Sum of xi_ij^2 over all i > j.
double xi_total(const Moments& m);
double xi_total(const SymmetricState& state);

/// Kitagawa-Ueda parameter for D = 2 states with <J_x> = <J_y> = 0:
/// (2/N)[<J_x^2 + J_y^2> - sqrt(<J_x^2 - J_y^2>^2 + <J_x J_y + J_y J_x>^2)].
double su2_xi(const SymmetricState& state);

/// (4/N) min over `points` equally spaced theta in [0, pi) of
/// <(cos theta J_x + sin theta J_y)^2>, evaluated from the same moments.
double su2_xi_theta_grid(const SymmetricState& state, int points);

}  // namespace symqudit
