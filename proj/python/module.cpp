#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coopdesign/compstat.hpp"
#include "coopdesign/examples.hpp"
#include "coopdesign/reactive.hpp"
#include "coopdesign/simulator.hpp"
#include "coopdesign/stage_game.hpp"

namespace py = pybind11;
using namespace coopdesign;

namespace {

py::dict property_report_dict(const PropertyReport& report) {
    py::dict out;
    py::list checks;
    for (const auto& check : report.checks) {
        py::dict c;
        c["id"] = check.id;
        c["passed"] = check.passed;
        c["detail"] = check.detail;
        if (check.witness) {
            py::list witness;
            for (Action a : *check.witness) witness.append(a == Action::Cooperate ? "C" : "N");
            c["witness"] = witness;
        } else {
            c["witness"] = py::none();
        }
        checks.append(c);
    }
    out["all_passed"] = report.all_passed();
    out["properties"] = checks;
    return out;
}

SimReport simulate_chain(const TaskEnvironment& env, int dwell, double extra, bool observe_good,
                         long teams, long horizon, std::uint64_t seed) {
    SimConfig config;
    config.env = env;
    config.policy = ReactiveChainPolicy{build_trigger_chain<double>(dwell, extra, observe_good)};
    config.teams = teams;
    config.horizon = horizon;
    config.seed = seed;
    return run(config);
}

SimReport simulate_static(const TaskEnvironment& env, double nu, double reshuffle, long teams,
                          long horizon, std::uint64_t seed) {
    SimConfig config;
    config.env = env;
    config.policy = StaticEntryPolicy{nu, reshuffle};
    config.teams = teams;
    config.horizon = horizon;
    config.seed = seed;
    return run(config);
}

SimReport simulate_grim(const Environment& env, double reshuffle, long teams, long horizon,
                        std::uint64_t seed) {
    SimConfig config;
    config.env = env;
    config.policy = EnvironmentGrimPolicy{reshuffle};
    config.teams = teams;
    config.horizon = horizon;
    config.seed = seed;
    return run(config);
}

}  // namespace

PYBIND11_MODULE(coopdesign, m) {
    m.doc() = "Cooperation outcomes and team-structure design for two-game stochastic "
              "team environments";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<PremiseError>(m, "PremiseError", PyExc_RuntimeError);

    py::enum_<Cooperation>(m, "Cooperation")
        .value("TOTAL", Cooperation::Total)
        .value("ONLY_GOOD", Cooperation::OnlyGood)
        .value("ONLY_BAD", Cooperation::OnlyBad)
        .value("NONE", Cooperation::None);

    py::enum_<Task>(m, "Task").value("GOOD", Task::Good).value("BAD", Task::Bad);
    py::enum_<GameLabel>(m, "GameLabel")
        .value("GOOD", GameLabel::Good)
        .value("BAD", GameLabel::Bad);

    py::class_<StageGame>(m, "StageGame")
        .def(py::init<>())
        .def_readwrite("n", &StageGame::n)
        .def_readwrite("label", &StageGame::label)
        .def_readwrite("coop_payoff", &StageGame::coop_payoff)
        .def_readwrite("defect_payoff", &StageGame::defect_payoff);

    py::class_<GamePrimitives>(m, "GamePrimitives")
        .def_readonly("coop_benefit", &GamePrimitives::coop_benefit)
        .def_readonly("temptation", &GamePrimitives::temptation);

    py::class_<Environment>(m, "Environment")
        .def(py::init([](double delta, double pG, double pB, double cG, double cB, double dG,
                         double dB, double VG, double VB) {
                 Environment env;
                 env.discount = delta;
                 env.p_good = pG;
                 env.p_bad = pB;
                 env.benefit_good = cG;
                 env.benefit_bad = cB;
                 env.temptation_good = dG;
                 env.temptation_bad = dB;
                 env.social_good = VG;
                 env.social_bad = VB;
                 return env;
             }),
             py::arg("delta"), py::arg("pG"), py::arg("pB"), py::arg("cG"), py::arg("cB"),
             py::arg("dG"), py::arg("dB"), py::arg("VG"), py::arg("VB"))
        .def_readwrite("delta", &Environment::discount)
        .def_readwrite("pG", &Environment::p_good)
        .def_readwrite("pB", &Environment::p_bad)
        .def_readwrite("cG", &Environment::benefit_good)
        .def_readwrite("cB", &Environment::benefit_bad)
        .def_readwrite("dG", &Environment::temptation_good)
        .def_readwrite("dB", &Environment::temptation_bad)
        .def_readwrite("VG", &Environment::social_good)
        .def_readwrite("VB", &Environment::social_bad);

    py::class_<TaskEnvironment>(m, "TaskEnvironment")
        .def(py::init([](double delta, double aG, double aB, double qG, double qB, double cG,
                         double cB, double dG, double dB, double VG, double VB) {
                 TaskEnvironment env;
                 env.discount = delta;
                 env.arrive_good = aG;
                 env.arrive_bad = aB;
                 env.cover_good = qG;
                 env.cover_bad = qB;
                 env.benefit_good = cG;
                 env.benefit_bad = cB;
                 env.temptation_good = dG;
                 env.temptation_bad = dB;
                 env.social_good = VG;
                 env.social_bad = VB;
                 return env;
             }),
             py::arg("delta"), py::arg("aG"), py::arg("aB"), py::arg("qG"), py::arg("qB"),
             py::arg("cG"), py::arg("cB"), py::arg("dG"), py::arg("dB"), py::arg("VG"),
             py::arg("VB"))
        .def_readwrite("delta", &TaskEnvironment::discount)
        .def_readwrite("aG", &TaskEnvironment::arrive_good)
        .def_readwrite("aB", &TaskEnvironment::arrive_bad)
        .def_readwrite("qG", &TaskEnvironment::cover_good)
        .def_readwrite("qB", &TaskEnvironment::cover_bad)
        .def_readwrite("cG", &TaskEnvironment::benefit_good)
        .def_readwrite("cB", &TaskEnvironment::benefit_bad)
        .def_readwrite("dG", &TaskEnvironment::temptation_good)
        .def_readwrite("dB", &TaskEnvironment::temptation_bad)
        .def_readwrite("VG", &TaskEnvironment::social_good)
        .def_readwrite("VB", &TaskEnvironment::social_bad);

    py::class_<ReshuffleDesign>(m, "ReshuffleDesign")
        .def_readonly("feasible_optimal", &ReshuffleDesign::feasible_optimal)
        .def_property_readonly("r_star",
                               [](const ReshuffleDesign& d) -> py::object {
                                   if (d.reshuffle_rate) return py::float_(*d.reshuffle_rate);
                                   return py::none();
                               })
        .def_property_readonly("delta_effective",
                               [](const ReshuffleDesign& d) -> py::object {
                                   if (d.discount_effective)
                                       return py::float_(*d.discount_effective);
                                   return py::none();
                               })
        .def_property_readonly("fallback",
                               [](const ReshuffleDesign& d) -> py::object {
                                   if (!d.fallback) return py::none();
                                   return py::str(*d.fallback == Fallback::KeepTogetherTotal
                                                      ? "keep-together-total"
                                                      : "reshuffle-none");
                               })
        .def_readonly("outcome", &ReshuffleDesign::outcome)
        .def_readonly("social_value", &ReshuffleDesign::social_value);

    py::class_<StaticEntryT<double>>(m, "StaticEntry")
        .def_readonly("nu", &StaticEntryT<double>::nu)
        .def_readonly("mass", &StaticEntryT<double>::mass)
        .def_readonly("reshuffle", &StaticEntryT<double>::reshuffle)
        .def_readonly("outcome", &StaticEntryT<double>::outcome);

    py::class_<StaticStructure>(m, "StaticStructure")
        .def_readonly("entries", &StaticStructure::entries)
        .def_readonly("social_value", &StaticStructure::social_value)
        .def_property_readonly("regime", [](const StaticStructure& s) {
            switch (s.regime) {
                case StaticRegime::Specialization: return "specialization";
                case StaticRegime::Hybrid: return "hybrid";
                case StaticRegime::NoCooperation: return "no-cooperation";
            }
            return "";
        });

    py::class_<OptimalReactive>(m, "ReactiveDesign")
        .def_readonly("observable", &OptimalReactive::observable)
        .def_readonly("NB", &OptimalReactive::dwell)
        .def_readonly("x", &OptimalReactive::extra)
        .def_property_readonly("bad_share",
                               [](const OptimalReactive& d) { return d.solution.bad_share; })
        .def_property_readonly("good_share",
                               [](const OptimalReactive& d) { return d.solution.good_share; })
        .def_property_readonly("slacks",
                               [](const OptimalReactive& d) { return d.solution.slacks; })
        .def_property_readonly("values",
                               [](const OptimalReactive& d) { return d.solution.values; })
        .def_readonly("cooperating_mass", &OptimalReactive::cooperating_mass)
        .def_readonly("all_noncooperative", &OptimalReactive::all_noncooperative)
        .def_readonly("social_value", &OptimalReactive::social_value);

    py::class_<PeriodPoint>(m, "PeriodPoint")
        .def_readonly("period_length", &PeriodPoint::period_length)
        .def_readonly("static_rate", &PeriodPoint::static_rate)
        .def_readonly("observable_rate", &PeriodPoint::observable_rate)
        .def_readonly("unobservable_rate", &PeriodPoint::unobservable_rate)
        .def_readonly("note", &PeriodPoint::note);

    py::class_<GainEstimate>(m, "GainEstimate")
        .def_readonly("state", &GainEstimate::state)
        .def_readonly("game", &GainEstimate::game)
        .def_readonly("prescribed_cooperate", &GainEstimate::prescribed_cooperate)
        .def_readonly("mean", &GainEstimate::mean)
        .def_readonly("ci_halfwidth", &GainEstimate::ci_halfwidth)
        .def_readonly("samples", &GainEstimate::samples);

    py::class_<CoopRate>(m, "CoopRate")
        .def_readonly("state", &CoopRate::state)
        .def_readonly("game", &CoopRate::game)
        .def_readonly("arrivals", &CoopRate::arrivals)
        .def_readonly("rate", &CoopRate::rate);

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("occupancy_good", &SimReport::occupancy_good)
        .def_readonly("occupancy_bad", &SimReport::occupancy_bad)
        .def_readonly("occupancy_ci", &SimReport::occupancy_ci)
        .def_readonly("social_value", &SimReport::social_value)
        .def_readonly("social_value_ci", &SimReport::social_value_ci)
        .def_readonly("coop", &SimReport::coop)
        .def_readonly("gains", &SimReport::gains);

    m.def("make_pd", &make_pd, py::arg("c"), py::arg("d"), py::arg("a"),
          py::arg("label") = GameLabel::Good, "two-player prisoner's dilemma table");
    m.def("check_properties",
          [](const StageGame& g) { return property_report_dict(check_properties(g)); });
    m.def("primitives", [](const StageGame& g) { return primitives(g); });

    m.def("classify", [](const Environment& env) { return classify(env); },
          "player-optimal cooperation pattern");
    m.def("effective_discount",
          [](double delta, double r) { return effective_discount(delta, r); });
    m.def("design_reshuffle", [](const Environment& env) { return design_reshuffle(env); });

    m.def("nu_coop", [](const TaskEnvironment& env) { return nu_coop(env); });
    m.def("full_specialization_check",
          [](const TaskEnvironment& env) { return full_specialization_check(env); });
    m.def("optimal_static", [](const TaskEnvironment& env) { return optimal_static(env); });

    m.def("design_observable", [](const TaskEnvironment& env) { return design_observable(env); });
    m.def("design_unobservable",
          [](const TaskEnvironment& env) { return design_unobservable(env); });
    m.def("strict_improvement_check",
          [](const TaskEnvironment& env) { return strict_improvement_check(env); });
    m.def("period_sweep",
          [](const TaskEnvironment& env, const std::vector<double>& periods) {
              return period_sweep(env, periods);
          });

    m.def("simulate_chain", &simulate_chain, py::arg("env"), py::arg("NB"), py::arg("x"),
          py::arg("observe_good"), py::arg("teams") = 1000, py::arg("horizon") = 1000,
          py::arg("seed") = 1);
    m.def("simulate_static", &simulate_static, py::arg("env"), py::arg("nu"), py::arg("r"),
          py::arg("teams") = 1000, py::arg("horizon") = 1000, py::arg("seed") = 1);
    m.def("simulate_grim", &simulate_grim, py::arg("env"), py::arg("r"), py::arg("teams") = 1000,
          py::arg("horizon") = 1000, py::arg("seed") = 1);

    m.def("benchmark_environment", [] { return benchmark_environment<double>(); });
    m.def("benchmark_task_environment", [] { return benchmark_task_environment<double>(); });
    m.def("limit_sweep_environment", &limit_sweep_environment);
}
