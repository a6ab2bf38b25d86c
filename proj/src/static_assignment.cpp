#include "coopdesign/static_assignment.hpp"

#include <cmath>

namespace coopdesign {

namespace {

double candidate_entry_value(const TaskEnvironment& env, double nu, double r,
                             const Tol<double>& tol) {
    const Environment induced = induced_environment(env, nu);
    return pattern_value(induced, classify_reshuffled(induced, r, tol));
}

}  // namespace

std::vector<GridCandidate> static_candidate_grid(const TaskEnvironment& env, double nu_step,
                                                 double tol_value) {
    Tol<double> tol(tol_value);
    validate(env, tol);
    if (!(nu_step > 0.0 && nu_step <= 1.0)) throw ValidationError("nu step must lie in (0,1]");

    std::vector<double> nus;
    for (double nu = 0.0; nu < 1.0 + 0.5 * nu_step; nu += nu_step)
        nus.push_back(std::min(nu, 1.0));
    const double reshuffles[2] = {0.0, 1.0};

    std::vector<GridCandidate> out;
    // Single-assignment candidates: balance forces nu = qG.
    for (double nu : nus) {
        if (!tol.eq(nu, env.cover_good)) continue;
        for (double r : reshuffles) {
            GridCandidate c;
            c.nu_a = nu;
            c.r_a = r;
            c.mass_a = 1.0;
            c.value = candidate_entry_value(env, nu, r, tol);
            out.push_back(c);
        }
    }
    // Two-assignment candidates with masses solved from the coverage share.
    for (size_t i = 0; i < nus.size(); ++i) {
        for (size_t j = i + 1; j < nus.size(); ++j) {
            const double nu_a = nus[i];
            const double nu_b = nus[j];
            const double mass_a = (env.cover_good - nu_b) / (nu_a - nu_b);
            if (mass_a < -tol.abs_tol || mass_a > 1.0 + tol.abs_tol) continue;
            const double clamped_a = std::min(std::max(mass_a, 0.0), 1.0);
            for (double r_a : reshuffles) {
                const double value_a = candidate_entry_value(env, nu_a, r_a, tol);
                for (double r_b : reshuffles) {
                    GridCandidate c;
                    c.nu_a = nu_a;
                    c.r_a = r_a;
                    c.mass_a = clamped_a;
                    c.has_b = true;
                    c.nu_b = nu_b;
                    c.r_b = r_b;
                    c.mass_b = 1.0 - clamped_a;
                    c.value = clamped_a * value_a +
                              (1.0 - clamped_a) * candidate_entry_value(env, nu_b, r_b, tol);
                    out.push_back(c);
                }
            }
        }
    }
    return out;
}

}  // namespace coopdesign
