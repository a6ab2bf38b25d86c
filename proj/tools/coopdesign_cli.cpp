// coopdesign — cooperation outcomes and team-structure design for two-game
// stochastic team environments.
//
// Subcommands read a scenario JSON document (--in PATH, or - for stdin) and
// write a JSON report to stdout or --out. Auxiliary artifacts: --csv for
// tables, --dot for chain graphs, --out for SVG with plot-regions.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coopdesign/compstat.hpp"
#include "coopdesign/examples.hpp"
#include "coopdesign/json_io.hpp"
#include "coopdesign/reactive.hpp"
#include "coopdesign/simulator.hpp"
#include "coopdesign/svg.hpp"

namespace cd = coopdesign;
using cd::Json;

namespace {

struct CommonArgs {
    std::string in_path = "-";
    std::string out_path;
    std::string csv_path;
    std::string dot_path;
    bool exact = false;
    std::string format = "json";
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw cd::ValidationError("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw cd::ValidationError("cannot open output file '" + path + "'");
    file << text;
}

void emit_report(const CommonArgs& args, const Json& report) {
    write_output(args.out_path, report.dump(2));
}

cd::Scenario load_scenario(const CommonArgs& args) {
    return cd::parse_scenario(read_input(args.in_path), args.exact);
}

const cd::Environment& need_environment(const cd::Scenario& scenario) {
    if (!scenario.environment)
        throw cd::ValidationError("this command needs an 'environment' section");
    return *scenario.environment;
}

const cd::TaskEnvironment& need_task_environment(const cd::Scenario& scenario) {
    if (!scenario.task_environment)
        throw cd::ValidationError("this command needs a 'task_environment' section");
    return *scenario.task_environment;
}

Json witness_json(const std::optional<std::vector<cd::Action>>& witness) {
    if (!witness) return nullptr;
    Json arr = Json::array();
    for (cd::Action a : *witness) arr.push_back(a == cd::Action::Cooperate ? "C" : "N");
    return arr;
}

// ---------------------------------------------------------------------------
// check-game
// ---------------------------------------------------------------------------

int run_check_game(const CommonArgs& args) {
    const auto scenario = load_scenario(args);
    if (!scenario.stage_game)
        throw cd::ValidationError("check-game needs a 'stage_game' section");
    const auto report = cd::check_properties(*scenario.stage_game);
    Json properties = Json::array();
    for (const auto& check : report.checks) {
        properties.push_back(Json{{"id", check.id},
                                  {"passed", check.passed},
                                  {"detail", check.detail},
                                  {"witness", witness_json(check.witness)}});
    }
    emit_report(args, Json{{"command", "check-game"},
                           {"all_passed", report.all_passed()},
                           {"properties", properties}});
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const CommonArgs& args) {
    const auto scenario = load_scenario(args);
    Json report{{"command", "classify"}};
    if (args.exact) {
        const auto& env = *scenario.environment_exact;
        const cd::Cooperation outcome = cd::classify(env);
        report["outcome"] = cd::to_string(outcome);
        report["social_value"] = cd::rational_to_json(cd::pattern_value(env, outcome));
    } else {
        const auto& env = need_environment(scenario);
        const cd::Cooperation outcome = cd::classify(env);
        report["outcome"] = cd::to_string(outcome);
        report["social_value"] = cd::pattern_value(env, outcome);
    }
    emit_report(args, report);
    return 0;
}

// ---------------------------------------------------------------------------
// design-reshuffle
// ---------------------------------------------------------------------------

template <typename R>
Json reshuffle_report(const cd::ReshuffleDesignT<R>& design) {
    auto number = [](const R& v) {
        if constexpr (cd::num<R>::exact)
            return cd::rational_to_json(v);
        else
            return Json(v);
    };
    Json report{{"command", "design-reshuffle"},
                {"feasible", design.feasible_optimal},
                {"outcome", cd::to_string(design.outcome)},
                {"social_value", number(design.social_value)},
                {"conditions",
                 Json{{"temptation_ordered", design.conditions.temptation_ordered},
                      {"good_sustains_alone", design.conditions.good_sustains_alone},
                      {"good_frequent_enough", design.conditions.good_frequent_enough}}}};
    report["r_star"] = design.reshuffle_rate ? number(*design.reshuffle_rate) : Json(nullptr);
    report["delta_effective"] =
        design.discount_effective ? number(*design.discount_effective) : Json(nullptr);
    if (design.fallback)
        report["fallback"] = *design.fallback == cd::Fallback::KeepTogetherTotal
                                 ? "keep-together-total"
                                 : "reshuffle-none";
    return report;
}

int run_design_reshuffle(const CommonArgs& args) {
    const auto scenario = load_scenario(args);
    if (args.exact) {
        emit_report(args, reshuffle_report(cd::design_reshuffle(*scenario.environment_exact)));
    } else {
        emit_report(args, reshuffle_report(cd::design_reshuffle(need_environment(scenario))));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// design-static
// ---------------------------------------------------------------------------

const char* regime_name(cd::StaticRegime regime) {
    switch (regime) {
        case cd::StaticRegime::Specialization: return "specialization";
        case cd::StaticRegime::Hybrid: return "hybrid";
        case cd::StaticRegime::NoCooperation: return "no-cooperation";
    }
    return "";
}

template <typename R>
Json static_report(const cd::StaticStructureT<R>& structure) {
    auto number = [](const R& v) {
        if constexpr (cd::num<R>::exact)
            return cd::rational_to_json(v);
        else
            return Json(v);
    };
    Json entries = Json::array();
    for (const auto& e : structure.entries) {
        entries.push_back(Json{{"nu", number(e.nu)},
                               {"mass", number(e.mass)},
                               {"reshuffle", number(e.reshuffle)},
                               {"outcome", cd::to_string(e.outcome)}});
    }
    Json report{{"command", "design-static"},
                {"regime", regime_name(structure.regime)},
                {"entries", entries},
                {"social_value", number(structure.social_value)},
                {"premises",
                 Json{{"good_needs_mixing", structure.good_needs_mixing},
                      {"bad_task_sustains", structure.bad_task_sustains}}}};
    report["nu_coop"] = structure.hybrid_nu ? number(*structure.hybrid_nu) : Json(nullptr);
    return report;
}

int run_design_static(const CommonArgs& args) {
    const auto scenario = load_scenario(args);
    if (args.exact) {
        emit_report(args, static_report(cd::optimal_static(*scenario.task_environment_exact)));
    } else {
        const auto& env = need_task_environment(scenario);
        emit_report(args, static_report(cd::optimal_static(env)));
        if (!args.csv_path.empty()) {
            std::string csv = "nu_a,r_a,mass_a,nu_b,r_b,mass_b,value\n";
            char line[256];
            for (const auto& c : cd::static_candidate_grid(env, 0.05)) {
                std::snprintf(line, sizeof(line), "%.6g,%.0f,%.6g,%s,%s,%s,%.12g\n", c.nu_a,
                              c.r_a, c.mass_a, c.has_b ? std::to_string(c.nu_b).c_str() : "",
                              c.has_b ? std::to_string(c.r_b).c_str() : "",
                              c.has_b ? std::to_string(c.mass_b).c_str() : "", c.value);
                csv += line;
            }
            write_output(args.csv_path, csv);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// design-reactive
// ---------------------------------------------------------------------------

template <typename R>
Json reactive_report(const cd::OptimalReactiveT<R>& design) {
    auto number = [](const R& v) {
        if constexpr (cd::num<R>::exact)
            return cd::rational_to_json(v);
        else
            return Json(v);
    };
    Json slacks = Json::array();
    for (int s = 0; s < design.chain.size(); ++s) {
        const auto& state = design.chain.states[static_cast<size_t>(s)];
        slacks.push_back(Json{{"state", state.name},
                              {"game", state.task == cd::Task::Good ? "G" : "B"},
                              {"slack", number(design.solution.slacks[static_cast<size_t>(s)])}});
    }
    Json masses{{"cooperating", number(design.cooperating_mass)}};
    if (design.specialist_task) {
        masses["specialist"] = number(design.specialist_mass);
        masses["specialist_task"] = *design.specialist_task == cd::Task::Good ? "tG" : "tB";
    }
    return Json{{"command", "design-reactive"},
                {"observable", design.observable},
                {"NB", design.dwell},
                {"x", number(design.extra)},
                {"bad_share", number(design.solution.bad_share)},
                {"good_share", number(design.solution.good_share)},
                {"slacks", slacks},
                {"masses", masses},
                {"all_noncooperative", design.all_noncooperative},
                {"social_value", number(design.social_value)}};
}

int run_design_reactive(const CommonArgs& args, bool observe_good) {
    const auto scenario = load_scenario(args);
    Json report;
    std::string dot;
    if (args.exact) {
        const auto design = cd::design_reactive(*scenario.task_environment_exact, observe_good);
        report = reactive_report(design);
        if (!args.dot_path.empty()) {
            // Render the double version of the same chain for the graph.
            const auto which = cd::design_reactive(*scenario.task_environment, observe_good);
            dot = cd::to_dot(which.chain);
        }
    } else {
        const auto design = cd::design_reactive(need_task_environment(scenario), observe_good);
        report = reactive_report(design);
        if (!args.dot_path.empty()) dot = cd::to_dot(design.chain);
    }
    emit_report(args, report);
    if (!args.dot_path.empty()) write_output(args.dot_path, dot);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

cd::SimPolicy parse_policy(const Json& options, const cd::Scenario& scenario) {
    if (!options.contains("policy"))
        throw cd::ValidationError("simulate: options.policy is required");
    const Json& p = options.at("policy");
    if (!p.is_object() || !p.contains("kind") || !p.at("kind").is_string())
        throw cd::ValidationError("simulate: policy needs a string 'kind'");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "grim") {
        cd::check_object_keys(p, {"kind", "r"}, "policy");
        cd::EnvironmentGrimPolicy policy;
        policy.reshuffle = p.value("r", 0.0);
        return policy;
    }
    if (kind == "static") {
        cd::check_object_keys(p, {"kind", "nu", "r"}, "policy");
        if (!p.contains("nu")) throw cd::ValidationError("simulate: static policy needs 'nu'");
        cd::StaticEntryPolicy policy;
        policy.nu = p.at("nu").get<double>();
        policy.reshuffle = p.value("r", 0.0);
        return policy;
    }
    if (kind == "optimal-static") {
        cd::check_object_keys(p, {"kind"}, "policy");
        if (!scenario.task_environment)
            throw cd::ValidationError("simulate: optimal-static needs a task_environment");
        return cd::StaticStructurePolicy{cd::optimal_static(*scenario.task_environment)};
    }
    if (kind == "reactive-observable" || kind == "reactive-unobservable") {
        cd::check_object_keys(p, {"kind"}, "policy");
        if (!scenario.task_environment)
            throw cd::ValidationError("simulate: reactive policies need a task_environment");
        const auto design = cd::design_reactive(*scenario.task_environment,
                                                kind == "reactive-observable");
        return cd::ReactiveChainPolicy{design.chain};
    }
    if (kind == "chain") {
        cd::check_object_keys(p, {"kind", "NB", "x", "observe_good"}, "policy");
        const int dwell = p.value("NB", 0);
        const double extra = p.value("x", 0.0);
        const bool observable = p.value("observe_good", true);
        return cd::ReactiveChainPolicy{cd::build_trigger_chain<double>(dwell, extra, observable)};
    }
    throw cd::ValidationError("simulate: unknown policy kind '" + kind + "'");
}

int run_simulate(const CommonArgs& args, std::optional<std::uint64_t> seed_flag) {
    if (args.exact) throw cd::ValidationError("simulate does not support --exact");
    const auto scenario = load_scenario(args);
    cd::check_object_keys(scenario.options,
                          {"teams", "horizon", "seed", "burn_in", "policy"}, "options");
    cd::SimConfig config;
    if (scenario.environment)
        config.env = *scenario.environment;
    else
        config.env = need_task_environment(scenario);
    config.policy = parse_policy(scenario.options, scenario);
    config.teams = scenario.options.value("teams", 1000);
    config.horizon = scenario.options.value("horizon", 1000);
    if (scenario.options.contains("burn_in"))
        config.burn_in = scenario.options.at("burn_in").get<long>();
    config.seed = scenario.options.value("seed", 1);
    if (seed_flag) config.seed = *seed_flag;
    config.collect_series = !args.csv_path.empty();

    const auto report = cd::run(config);

    Json coop = Json::array();
    for (const auto& rate : report.coop) {
        coop.push_back(Json{{"state", rate.state},
                            {"game", rate.game},
                            {"arrivals", rate.arrivals},
                            {"cooperations", rate.cooperations},
                            {"rate", rate.rate}});
    }
    Json gains = Json::array();
    for (const auto& gain : report.gains) {
        gains.push_back(Json{{"state", gain.state},
                             {"game", gain.game},
                             {"prescribed_cooperate", gain.prescribed_cooperate},
                             {"mean", gain.mean},
                             {"ci_halfwidth", gain.ci_halfwidth},
                             {"samples", gain.samples},
                             {"low_samples", gain.low_samples},
                             {"truncation_bound", gain.truncation_bound}});
    }
    emit_report(args, Json{{"command", "simulate"},
                           {"teams", report.teams},
                           {"periods_measured", report.periods_measured},
                           {"seed", config.seed},
                           {"occupancy",
                            Json{{"good", report.occupancy_good},
                                 {"bad", report.occupancy_bad},
                                 {"ci_halfwidth", report.occupancy_ci}}},
                           {"social_value", report.social_value},
                           {"social_value_ci", report.social_value_ci},
                           {"coop", coop},
                           {"deviation_gains", gains}});

    if (!args.csv_path.empty()) {
        std::string csv = "period,good_task_share,bad_task_share,coop_rate_good,coop_rate_bad\n";
        char line[160];
        for (const auto& row : report.series) {
            std::snprintf(line, sizeof(line), "%ld,%.6f,%.6f,%.6f,%.6f\n", row.period,
                          row.good_task_share, row.bad_task_share, row.coop_rate_good,
                          row.coop_rate_bad);
            csv += line;
        }
        write_output(args.csv_path, csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// compstat
// ---------------------------------------------------------------------------

int run_compstat(const CommonArgs& args) {
    if (args.exact) throw cd::ValidationError("compstat does not support --exact");
    const auto scenario = load_scenario(args);
    const auto& env = need_environment(scenario);
    cd::check_object_keys(scenario.options,
                          {"axis", "grid", "with_optimal_reshuffle", "demo_scale"}, "options");

    if (scenario.options.contains("demo_scale")) {
        const double scale = scenario.options.at("demo_scale").get<double>();
        const auto demo = cd::ratio_vs_level_demo(env, scale);
        emit_report(args, Json{{"command", "compstat"},
                               {"demo", "ratio-vs-level"},
                               {"scale", demo.scale},
                               {"before",
                                Json{{"solo_good", demo.solo_good_before},
                                     {"solo_bad", demo.solo_bad_before},
                                     {"total", demo.total_before},
                                     {"outcome", cd::to_string(demo.outcome_before)}}},
                               {"after",
                                Json{{"solo_good", demo.solo_good_after},
                                     {"solo_bad", demo.solo_bad_after},
                                     {"total", demo.total_after},
                                     {"outcome", cd::to_string(demo.outcome_after)}}}});
        return 0;
    }

    cd::SweepSpec spec;
    spec.base = env;
    if (!scenario.options.contains("axis") || !scenario.options.at("axis").is_string())
        throw cd::ValidationError("compstat: options.axis is required");
    const auto axis = cd::parse_axis(scenario.options.at("axis").get<std::string>());
    if (!axis) throw cd::ValidationError("compstat: unknown axis");
    spec.axis = *axis;
    if (!scenario.options.contains("grid") || !scenario.options.at("grid").is_array())
        throw cd::ValidationError("compstat: options.grid is required");
    for (const auto& v : scenario.options.at("grid")) spec.grid.push_back(v.get<double>());
    spec.with_optimal_reshuffle = scenario.options.value("with_optimal_reshuffle", false);

    const auto result = cd::sweep(spec);
    Json points = Json::array();
    std::string csv = "axis_value,outcome,r_star,social_value,note\n";
    for (const auto& point : result.points) {
        Json row{{"value", point.axis_value},
                 {"outcome", point.valid ? cd::to_string(point.outcome) : "invalid"},
                 {"social_value", point.social_value}};
        row["r_star"] = point.reshuffle_rate ? Json(*point.reshuffle_rate) : Json(nullptr);
        if (!point.note.empty()) row["note"] = point.note;
        points.push_back(row);
        char line[256];
        std::snprintf(line, sizeof(line), "%.12g,%s,%s,%.12g,%s\n", point.axis_value,
                      point.valid ? cd::to_string(point.outcome) : "invalid",
                      point.reshuffle_rate ? std::to_string(*point.reshuffle_rate).c_str() : "",
                      point.social_value, point.note.c_str());
        csv += line;
    }
    Json boundaries = Json::array();
    for (const auto& b : result.boundaries) {
        boundaries.push_back(Json{{"value", b.axis_value},
                                  {"below", cd::to_string(b.below)},
                                  {"above", cd::to_string(b.above)},
                                  {"residual", b.residual}});
    }
    if (args.format == "csv") {
        write_output(args.out_path, csv);
    } else {
        emit_report(args, Json{{"command", "compstat"},
                               {"axis", cd::to_string(spec.axis)},
                               {"points", points},
                               {"boundaries", boundaries}});
        if (!args.csv_path.empty()) write_output(args.csv_path, csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// plot-regions
// ---------------------------------------------------------------------------

int run_plot_regions(const CommonArgs& args) {
    if (args.exact) throw cd::ValidationError("plot-regions does not support --exact");
    const auto scenario = load_scenario(args);
    const auto& env = need_environment(scenario);
    cd::validate(env);
    const cd::GamePrimitives good{env.benefit_good, env.temptation_good};
    const cd::GamePrimitives bad{env.benefit_bad, env.temptation_bad};
    const auto geometry = cd::region_boundaries(good, bad);
    const double w = cd::continuation_weight(env.discount);
    const std::string svg = cd::region_svg(geometry, {{w * env.p_bad, w * env.p_good}});
    if (args.out_path.empty())
        throw cd::ValidationError("plot-regions needs --out for the SVG file");
    write_output(args.out_path, svg);

    Json regions = Json::array();
    for (const auto& region : geometry.regions)
        regions.push_back(Json{{"id", region.id}, {"outcome", cd::to_string(region.outcome)}});
    std::cout << Json{{"command", "plot-regions"},
                      {"svg", args.out_path},
                      {"regions", regions}}
                     .dump(2)
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// paper-examples: the built-in worked examples with their exact published
// values, checked in rational arithmetic and cross-checked against floats.
// ---------------------------------------------------------------------------

int run_paper_examples(const CommonArgs& args, bool json_output) {
    using R = cd::Rational;
    const auto env = cd::benchmark_task_environment<R>();
    const auto env_float = cd::benchmark_task_environment<double>();

    struct Row {
        std::string quantity;
        std::string expected;
        std::string actual;
        bool pass;
        double float_value;
        double exact_as_double;
    };
    std::vector<Row> rows;
    auto add_row = [&](const std::string& quantity, const R& expected, const R& actual,
                       double float_value) {
        rows.push_back({quantity, cd::num<R>::str(expected), cd::num<R>::str(actual),
                        expected == actual, float_value, cd::num<R>::to_double(actual)});
    };

    const auto nu = cd::nu_coop(env);
    const auto nu_float = cd::nu_coop(env_float);
    add_row("nu_coop(tG)", R(1) / 3, nu ? *nu : R(-1), nu_float ? *nu_float : -1.0);

    const auto obs = cd::design_observable(env);
    const auto obs_float = cd::design_observable(env_float);
    add_row("observable N_B", R(1), R(obs.dwell), obs_float.dwell);
    add_row("observable x", R(5) / 9, obs.extra, obs_float.extra);
    add_row("observable bad share", R(7) / 16, obs.solution.bad_share,
            obs_float.solution.bad_share);

    const auto unobs = cd::design_unobservable(env);
    const auto unobs_float = cd::design_unobservable(env_float);
    add_row("unobservable N_B", R(1), R(unobs.dwell), unobs_float.dwell);
    add_row("unobservable x", R(5) / 27, unobs.extra, unobs_float.extra);
    add_row("unobservable bad share", R(32) / 59, unobs.solution.bad_share,
            unobs_float.solution.bad_share);

    bool all_pass = true;
    bool modes_agree = true;
    for (const auto& row : rows) {
        all_pass = all_pass && row.pass;
        modes_agree = modes_agree && std::fabs(row.float_value - row.exact_as_double) <= 1e-12;
    }

    if (json_output) {
        Json table = Json::array();
        for (const auto& row : rows)
            table.push_back(Json{{"quantity", row.quantity},
                                 {"expected", row.expected},
                                 {"actual", row.actual},
                                 {"pass", row.pass},
                                 {"float_value", row.float_value}});
        emit_report(args, Json{{"command", "paper-examples"},
                               {"all_pass", all_pass},
                               {"float_agrees_with_exact", modes_agree},
                               {"rows", table}});
    } else {
        std::ostringstream out;
        out << "quantity                 expected   actual     status\n";
        for (const auto& row : rows) {
            out << row.quantity;
            for (size_t i = row.quantity.size(); i < 25; ++i) out << ' ';
            out << row.expected;
            for (size_t i = row.expected.size(); i < 11; ++i) out << ' ';
            out << row.actual;
            for (size_t i = row.actual.size(); i < 11; ++i) out << ' ';
            out << (row.pass ? "pass" : "FAIL") << "\n";
        }
        out << (all_pass ? "all examples pass" : "MISMATCH detected") << "; float/exact agree: "
            << (modes_agree ? "yes" : "NO") << "\n";
        write_output(args.out_path, out.str());
    }
    return all_pass && modes_agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperation design for two-game stochastic team environments"};
    app.require_subcommand(1);

    CommonArgs args;
    bool observe_good = true;
    std::optional<std::uint64_t> seed_flag;

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--in", args.in_path, "scenario JSON path, or - for stdin");
        cmd->add_option("--out", args.out_path, "output path (default: stdout)");
        cmd->add_flag("--exact", args.exact, "use exact rational arithmetic");
        cmd->add_option("--format", args.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        return cmd;
    };

    auto* check_game = add_common(app.add_subcommand("check-game", "verify stage-game properties"));
    auto* classify_cmd =
        add_common(app.add_subcommand("classify", "player-optimal cooperation pattern"));
    auto* reshuffle_cmd = add_common(
        app.add_subcommand("design-reshuffle", "optimal team durability for a fixed assignment"));
    auto* static_cmd = add_common(
        app.add_subcommand("design-static", "optimal static team structure over two tasks"));
    static_cmd->add_option("--csv", args.csv_path, "audit grid of candidate structures");
    auto* reactive_cmd = add_common(
        app.add_subcommand("design-reactive", "optimal reactive (dynamic) team structure"));
    reactive_cmd->add_option("--observe-good", observe_good,
                             "whether the designer observes good-game arrivals");
    reactive_cmd->add_option("--dot", args.dot_path, "write the chain graph in DOT format");
    auto* simulate_cmd =
        add_common(app.add_subcommand("simulate", "Monte-Carlo verification of a policy"));
    simulate_cmd->add_option("--csv", args.csv_path, "per-period time series CSV");
    std::uint64_t seed_value = 0;
    auto* seed_option = simulate_cmd->add_option("--seed", seed_value, "override the scenario seed");
    auto* compstat_cmd =
        add_common(app.add_subcommand("compstat", "comparative-statics sweeps over payoffs"));
    compstat_cmd->add_option("--csv", args.csv_path, "sweep table CSV");
    auto* plot_cmd = add_common(
        app.add_subcommand("plot-regions", "SVG diagram of the cooperation regions"));
    auto* examples_cmd = add_common(
        app.add_subcommand("paper-examples", "check the built-in worked examples exactly"),
        /*needs_input=*/false);

    CLI11_PARSE(app, argc, argv);
    if (seed_option->count() > 0) seed_flag = seed_value;

    try {
        if (check_game->parsed()) return run_check_game(args);
        if (classify_cmd->parsed()) return run_classify(args);
        if (reshuffle_cmd->parsed()) return run_design_reshuffle(args);
        if (static_cmd->parsed()) return run_design_static(args);
        if (reactive_cmd->parsed()) return run_design_reactive(args, observe_good);
        if (simulate_cmd->parsed()) return run_simulate(args, seed_flag);
        if (compstat_cmd->parsed()) return run_compstat(args);
        if (plot_cmd->parsed()) return run_plot_regions(args);
        if (examples_cmd->parsed())
            return run_paper_examples(args,
                                      examples_cmd->count("--format") > 0 && args.format == "json");
    } catch (const cd::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const cd::PremiseError& e) {
        std::cerr << "premise violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
