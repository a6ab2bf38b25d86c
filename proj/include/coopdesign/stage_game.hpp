#ifndef COOPDESIGN_STAGE_GAME_HPP
#define COOPDESIGN_STAGE_GAME_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coopdesign/numeric.hpp"

namespace coopdesign {

enum class Action { Cooperate, Defect };
enum class GameLabel { Good, Bad };

// Finite symmetric stage game: a player's payoff depends on their own action
// and the number of other players cooperating. Symmetry is built into the
// representation, so full action profiles reduce to cooperator counts.
struct StageGame {
    int n = 2;
    GameLabel label = GameLabel::Good;
    std::vector<double> coop_payoff;    // coop_payoff[k]   = payoff(C, k others cooperating)
    std::vector<double> defect_payoff;  // defect_payoff[k] = payoff(N, k others cooperating)

    double payoff(Action own, int others_cooperating) const {
        return own == Action::Cooperate ? coop_payoff[static_cast<size_t>(others_cooperating)]
                                        : defect_payoff[static_cast<size_t>(others_cooperating)];
    }
    // Sum of payoffs over all players when exactly m of them cooperate.
    double aggregate_payoff(int m) const;
};

// Incentive primitives of a stage game: the gain of full cooperation over
// full defection and the one-shot gain of defecting against cooperators.
struct GamePrimitives {
    double coop_benefit = 0.0;     // c_g
    double temptation = 0.0;       // d_g
};

struct PropertyCheck {
    int id = 0;
    bool passed = false;
    std::string detail;
    // Canonical violating profile (one action per player), when one exists.
    std::optional<std::vector<Action>> witness;
};

struct PropertyReport {
    std::array<PropertyCheck, 6> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Verifies the six structural restrictions by exhaustive enumeration over
// cooperator counts (exhaustive over profiles by symmetry). Property 1 is
// guaranteed by the representation and reported as such.
PropertyReport check_properties(const StageGame& g, double tol = global_tolerance());

// (c_g, d_g) extracted from the payoff table. Rejects games that fail
// check_properties or whose primitives are not strictly positive.
GamePrimitives primitives(const StageGame& g, double tol = global_tolerance());

namespace detail {
// Raw table differences without the property gate; used by primitives() and
// by oracle tests that exercise the defining arithmetic on arbitrary tables.
GamePrimitives extract_primitives(const StageGame& g);
}  // namespace detail

// The two-player prisoner's dilemma with cooperation payoff c, temptation d,
// and sucker loss a. Validity of a relative to c+d is check_properties'
// business, not enforced here.
StageGame make_pd(double c, double d, double a, GameLabel label = GameLabel::Good);

// Structural validation of the table shape (sizes, n >= 2). Throws
// ValidationError on failure.
void validate_shape(const StageGame& g);

}  // namespace coopdesign

#endif  // COOPDESIGN_STAGE_GAME_HPP
