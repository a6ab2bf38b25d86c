#include "coopdesign/reactive.hpp"

#include <cmath>

namespace coopdesign {

TaskEnvironment scale_period(const TaskEnvironment& env, double period_length) {
    if (!(period_length > 0.0 && period_length <= 1.0))
        throw ValidationError("period length must lie in (0,1]");
    TaskEnvironment scaled = env;
    scaled.discount = std::pow(env.discount, period_length);
    scaled.arrive_good = std::min(env.arrive_good * period_length, 1.0);
    scaled.arrive_bad = std::min(env.arrive_bad * period_length, 1.0);
    return scaled;
}

std::vector<PeriodPoint> period_sweep(const TaskEnvironment& env,
                                      const std::vector<double>& period_lengths,
                                      double tol_value) {
    Tol<double> tol(tol_value);
    std::vector<PeriodPoint> out;
    out.reserve(period_lengths.size());
    for (double period : period_lengths) {
        PeriodPoint point;
        point.period_length = period;
        TaskEnvironment scaled;
        try {
            scaled = scale_period(env, period);
            point.static_rate = optimal_static(scaled, tol).social_value / period;
        } catch (const std::exception& e) {
            point.note = std::string("static: ") + e.what();
            out.push_back(point);
            continue;
        }
        try {
            const auto obs = design_observable(scaled, tol);
            point.observable_rate = obs.social_value / period;
            point.observable_bad_share = obs.solution.bad_share;
        } catch (const PremiseError& e) {
            point.note += std::string(point.note.empty() ? "" : "; ") + "observable: " + e.what();
        }
        try {
            const auto unobs = design_unobservable(scaled, tol);
            point.unobservable_rate = unobs.social_value / period;
            point.unobservable_bad_share = unobs.solution.bad_share;
        } catch (const PremiseError& e) {
            point.note += std::string(point.note.empty() ? "" : "; ") + "unobservable: " + e.what();
        }
        out.push_back(point);
    }
    return out;
}

}  // namespace coopdesign
