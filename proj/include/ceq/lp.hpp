#pragma once

#include "ceq/game.hpp"
#include "ceq/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ceq {

/// One linear constraint over the per-profile probability variables.
struct LinearConstraint {
    enum class Relation { GreaterEqual, Equal };

    std::vector<Rational> coeffs;  // one per profile, indexed by code
    Relation relation = Relation::GreaterEqual;
    Rational rhs;
    std::string label;
};

/// The feasibility program whose solutions are exactly the correlated
/// equilibria of a binary game: 2n inequality constraints (one per player and
/// action) plus the total-probability equation, over 2^n nonnegative
/// variables.
struct FeasibilitySystem {
    int n = 0;
    std::uint64_t variable_count = 0;
    std::vector<LinearConstraint> constraints;
};

/// Requires a complete binary game with n <= 10 (the system has 2^n columns).
FeasibilitySystem build_system(const GameTable& game);

/// Finds a correlated equilibrium by exact-rational two-phase simplex with
/// Bland's rule. The result is a basic feasible solution, so its support has
/// at most 2n + 1 profiles. A correlated equilibrium always exists, so an
/// infeasible outcome indicates an internal inconsistency and throws.
Distribution find_exact_ce(const GameTable& game);

}  // namespace ceq
