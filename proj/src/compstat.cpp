#include "coopdesign/compstat.hpp"

#include <cmath>

namespace coopdesign {

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::BenefitGood: return "cG";
        case SweepAxis::BenefitBad: return "cB";
        case SweepAxis::TemptationGood: return "dG";
        case SweepAxis::TemptationBad: return "dB";
        case SweepAxis::Discount: return "delta";
        case SweepAxis::PGood: return "pG";
        case SweepAxis::PBad: return "pB";
    }
    return "";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
    if (name == "cG") return SweepAxis::BenefitGood;
    if (name == "cB") return SweepAxis::BenefitBad;
    if (name == "dG") return SweepAxis::TemptationGood;
    if (name == "dB") return SweepAxis::TemptationBad;
    if (name == "delta") return SweepAxis::Discount;
    if (name == "pG") return SweepAxis::PGood;
    if (name == "pB") return SweepAxis::PBad;
    return std::nullopt;
}

Environment with_axis(const Environment& base, SweepAxis axis, double value) {
    Environment env = base;
    switch (axis) {
        case SweepAxis::BenefitGood: env.benefit_good = value; break;
        case SweepAxis::BenefitBad: env.benefit_bad = value; break;
        case SweepAxis::TemptationGood: env.temptation_good = value; break;
        case SweepAxis::TemptationBad: env.temptation_bad = value; break;
        case SweepAxis::Discount: env.discount = value; break;
        case SweepAxis::PGood: env.p_good = value; break;
        case SweepAxis::PBad: env.p_bad = value; break;
    }
    return env;
}

namespace {

// Distance of the binding classification condition from equality.
double boundary_residual(const Environment& env) {
    const double w = continuation_weight(env.discount);
    const double total = std::max(env.temptation_good, env.temptation_bad) -
                         w * (env.p_good * env.benefit_good + env.p_bad * env.benefit_bad);
    const double solo_good = env.temptation_good - w * env.p_good * env.benefit_good;
    const double solo_bad = env.temptation_bad - w * env.p_bad * env.benefit_bad;
    double best = std::fabs(total);
    best = std::min(best, std::fabs(solo_good));
    best = std::min(best, std::fabs(solo_bad));
    return best;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, double tol_value) {
    Tol<double> tol(tol_value);
    SweepResult out;
    out.spec = spec;
    out.points.reserve(spec.grid.size());
    for (double v : spec.grid) {
        SweepPoint point;
        point.axis_value = v;
        const Environment env = with_axis(spec.base, spec.axis, v);
        try {
            point.outcome = classify(env, tol);
            point.valid = true;
            if (spec.with_optimal_reshuffle) {
                const auto design = design_reshuffle(env, tol);
                if (design.feasible_optimal) point.reshuffle_rate = design.reshuffle_rate;
                point.social_value = design.social_value;
            } else {
                point.social_value = pattern_value(env, point.outcome);
            }
        } catch (const ValidationError& e) {
            point.note = e.what();
        }
        out.points.push_back(point);
    }

    // Outcome changes between consecutive valid grid points: bisect for the
    // crossing value.
    for (size_t i = 0; i + 1 < out.points.size(); ++i) {
        const auto& lo_point = out.points[i];
        const auto& hi_point = out.points[i + 1];
        if (!lo_point.valid || !hi_point.valid) continue;
        if (lo_point.outcome == hi_point.outcome) continue;
        double lo = lo_point.axis_value;
        double hi = hi_point.axis_value;
        const Cooperation lo_outcome = lo_point.outcome;
        for (int iter = 0; iter < 200 && std::fabs(hi - lo) > 1e-14 * std::max(1.0, std::fabs(hi));
             ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (classify(with_axis(spec.base, spec.axis, mid), tol) == lo_outcome)
                lo = mid;
            else
                hi = mid;
        }
        SweepBoundary boundary;
        boundary.axis_value = 0.5 * (lo + hi);
        boundary.below = lo_point.outcome;
        boundary.above = hi_point.outcome;
        boundary.residual =
            boundary_residual(with_axis(spec.base, spec.axis, boundary.axis_value));
        out.boundaries.push_back(boundary);
    }
    return out;
}

RatioLevelReport ratio_vs_level_demo(const Environment& env, double scale, double tol_value) {
    if (!(scale > 0.0)) throw ValidationError("scale must be positive");
    Tol<double> tol(tol_value);
    validate(env);

    Environment scaled = env;
    scaled.benefit_good *= scale;
    scaled.temptation_good *= scale;

    RatioLevelReport report;
    report.scale = scale;
    report.solo_good_before = solo_cooperation_holds(env, true, tol);
    report.solo_good_after = solo_cooperation_holds(scaled, true, tol);
    report.solo_bad_before = solo_cooperation_holds(env, false, tol);
    report.solo_bad_after = solo_cooperation_holds(scaled, false, tol);
    report.total_before = total_cooperation_holds(env, tol);
    report.total_after = total_cooperation_holds(scaled, tol);
    report.outcome_before = classify(env, tol);
    report.outcome_after = classify(scaled, tol);
    return report;
}

}  // namespace coopdesign
