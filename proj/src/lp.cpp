#include "ceq/lp.hpp"

#include "ceq/error.hpp"
#include "ceq/profile.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ceq {

FeasibilitySystem build_system(const GameTable& game) {
    if (!game.binary()) throw Error("build_system requires a binary game");
    if (game.players() > 10) {
        throw Error("build_system supports n <= 10 (2^n variables), got n=" +
                    std::to_string(game.players()));
    }
    if (auto missing = game.first_missing()) {
        throw Error("game is incomplete: player " + std::to_string(missing->first) +
                    " at profile " + game.profile_string(missing->second) + " is unassigned");
    }

    const int n = game.players();
    const std::uint64_t vars = std::uint64_t{1} << n;
    FeasibilitySystem system{n, vars, {}};

    for (int i = 1; i <= n; ++i) {
        for (int a = 0; a <= 1; ++a) {
            LinearConstraint con;
            con.coeffs.assign(vars, Rational(0));
            con.relation = LinearConstraint::Relation::GreaterEqual;
            con.rhs = Rational(0);
            con.label = "player " + std::to_string(i) + " action " + std::to_string(a);
            for (std::uint64_t c = 0; c < vars; ++c) {
                const Profile s(c);
                if (s.bit(i) != a) continue;
                con.coeffs[c] = game.utility(i, s) - game.utility(i, s.flip(i));
            }
            system.constraints.push_back(std::move(con));
        }
    }

    LinearConstraint total;
    total.coeffs.assign(vars, Rational(1));
    total.relation = LinearConstraint::Relation::Equal;
    total.rhs = Rational(1);
    total.label = "total probability";
    system.constraints.push_back(std::move(total));

    return system;
}

namespace {

/// Phase-1 simplex tableau: minimize the sum of artificial variables over
/// rows A x' = b with x' >= 0 and b >= 0. Columns are laid out as
/// [profile variables | surplus variables | artificial variables].
class PhaseOneTableau {
public:
    explicit PhaseOneTableau(const FeasibilitySystem& system) {
        rows_ = system.constraints.size();
        std::size_t surplus = 0;
        for (const auto& con : system.constraints) {
            if (con.relation == LinearConstraint::Relation::GreaterEqual) ++surplus;
        }
        vars_ = static_cast<std::size_t>(system.variable_count);
        surplus_base_ = vars_;
        artificial_base_ = vars_ + surplus;
        cols_ = artificial_base_ + rows_;

        table_.assign(rows_, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.resize(rows_);

        std::size_t next_surplus = surplus_base_;
        for (std::size_t r = 0; r < rows_; ++r) {
            const auto& con = system.constraints[r];
            for (std::size_t j = 0; j < vars_; ++j) table_[r][j] = con.coeffs[j];
            if (con.relation == LinearConstraint::Relation::GreaterEqual) {
                table_[r][next_surplus++] = Rational(-1);
            }
            table_[r][artificial_base_ + r] = Rational(1);
            table_[r][cols_] = con.rhs;  // all rhs are >= 0 here
            basis_[r] = artificial_base_ + r;
        }
    }

    /// Runs Bland-rule pivots until no entering column remains; returns the
    /// final phase-1 objective (0 iff the system is feasible).
    Rational minimize() {
        while (true) {
            const auto entering = entering_column();
            if (!entering) break;
            pivot(*entering);
        }
        Rational objective(0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] >= artificial_base_) objective += table_[r][cols_];
        }
        return objective;
    }

    /// Values of the profile variables in the current basic solution.
    std::map<Profile, Rational> profile_solution() const {
        std::map<Profile, Rational> out;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < vars_ && table_[r][cols_] != 0) {
                out[Profile(basis_[r])] = table_[r][cols_];
            }
        }
        return out;
    }

private:
    /// Bland's rule: the lowest-index column with a negative reduced cost.
    /// Artificial columns never re-enter.
    std::optional<std::size_t> entering_column() const {
        for (std::size_t j = 0; j < artificial_base_; ++j) {
            Rational reduced(0);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (basis_[r] >= artificial_base_) reduced -= table_[r][j];
            }
            if (reduced < 0 && !is_basic(j)) return j;
        }
        return std::nullopt;
    }

    bool is_basic(std::size_t j) const {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] == j) return true;
        }
        return false;
    }

    void pivot(std::size_t entering) {
        // Ratio test; ties broken by the smallest basis variable index
        // (the other half of Bland's anti-cycling rule).
        std::optional<std::size_t> leaving;
        Rational best_ratio(0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (table_[r][entering] <= 0) continue;
            const Rational ratio = table_[r][cols_] / table_[r][entering];
            if (!leaving || ratio < best_ratio ||
                (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (!leaving) {
            throw Error("internal: phase-1 objective unbounded below");
        }
        const std::size_t lr = *leaving;
        const Rational pivot_value = table_[lr][entering];
        for (auto& cell : table_[lr]) cell /= pivot_value;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lr || table_[r][entering] == 0) continue;
            const Rational factor = table_[r][entering];
            for (std::size_t j = 0; j <= cols_; ++j) {
                table_[r][j] -= factor * table_[lr][j];
            }
        }
        basis_[lr] = entering;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t vars_ = 0;
    std::size_t surplus_base_ = 0;
    std::size_t artificial_base_ = 0;
    std::vector<std::vector<Rational>> table_;
    std::vector<std::size_t> basis_;
};

}  // namespace

Distribution find_exact_ce(const GameTable& game) {
    const FeasibilitySystem system = build_system(game);
    PhaseOneTableau tableau(system);
    if (tableau.minimize() != 0) {
        throw Error("internal: correlated-equilibrium system reported infeasible");
    }
    return Distribution(game.players(), tableau.profile_solution());
}

}  // namespace ceq
