#ifndef COOPDESIGN_COMPSTAT_HPP
#define COOPDESIGN_COMPSTAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "coopdesign/reshuffle.hpp"

namespace coopdesign {

enum class SweepAxis { BenefitGood, BenefitBad, TemptationGood, TemptationBad, Discount, PGood, PBad };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(const std::string& name);

struct SweepSpec {
    Environment base;
    SweepAxis axis = SweepAxis::BenefitGood;
    std::vector<double> grid;
    bool with_optimal_reshuffle = false;
};

struct SweepPoint {
    double axis_value = 0.0;
    bool valid = false;
    std::string note;                   // invariant violation when skipped
    Cooperation outcome = Cooperation::None;
    std::optional<double> reshuffle_rate;  // r*, when requested and feasible
    double social_value = 0.0;
};

// Boundary between two outcome segments, located by bisection; `residual` is
// the distance of the binding Lemma-1 condition from equality there.
struct SweepBoundary {
    double axis_value = 0.0;
    Cooperation below = Cooperation::None;
    Cooperation above = Cooperation::None;
    double residual = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;
    std::vector<SweepBoundary> boundaries;
};

Environment with_axis(const Environment& base, SweepAxis axis, double value);

SweepResult sweep(const SweepSpec& spec, double tol = global_tolerance());

// Single-game incentives depend only on the ratio d/c; with two games the
// levels matter. The demo scales the good game's (c, d) jointly and reports
// the solo and total conditions before and after.
struct RatioLevelReport {
    double scale = 1.0;
    bool solo_good_before = false, solo_good_after = false;
    bool solo_bad_before = false, solo_bad_after = false;
    bool total_before = false, total_after = false;
    Cooperation outcome_before = Cooperation::None;
    Cooperation outcome_after = Cooperation::None;
};

RatioLevelReport ratio_vs_level_demo(const Environment& env, double scale,
                                     double tol = global_tolerance());

}  // namespace coopdesign

#endif  // COOPDESIGN_COMPSTAT_HPP
