#include "coopdesign/json_io.hpp"

#include <cctype>

namespace coopdesign {

namespace {

std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, column = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

double number_field(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) throw ValidationError(context + ": missing field '" + key + "'");
    const Json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        // Accept the exact-mode fraction spelling in float mode too.
        const Rational r = rational_from_json(v, context + "." + key);
        return num<Rational>::to_double(r);
    }
    throw ValidationError(context + ": field '" + key + "' must be a number");
}

Rational rational_field(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) throw ValidationError(context + ": missing field '" + key + "'");
    return rational_from_json(j.at(key), context + "." + key);
}

Rational parse_decimal(const std::string& text, const std::string& context) {
    size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    boost::multiprecision::cpp_int numerator = 0;
    boost::multiprecision::cpp_int denominator = 1;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '.') {
            if (seen_point) throw ValidationError(context + ": malformed number '" + text + "'");
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ValidationError(context + ": malformed number '" + text + "'");
        numerator = numerator * 10 + (ch - '0');
        if (seen_point) denominator *= 10;
        any_digit = true;
    }
    if (!any_digit) throw ValidationError(context + ": malformed number '" + text + "'");
    Rational value(numerator, denominator);
    return negative ? Rational(-value) : value;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ValidationError("malformed JSON at line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ": " + e.what());
    }
}

void check_object_keys(const Json& object, const std::set<std::string>& allowed,
                       const std::string& context) {
    if (!object.is_object()) throw ValidationError(context + ": expected a JSON object");
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ValidationError(context + ": unknown field '" + key + "'");
    }
}

Rational rational_from_json(const Json& value, const std::string& context) {
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
    if (value.is_number_float()) {
        // Exact binary expansion of the double; decimal strings are the
        // faithful spelling for non-dyadic values.
        return Rational(value.get<double>());
    }
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        const size_t slash = text.find('/');
        if (slash == std::string::npos) return parse_decimal(text, context);
        const Rational numerator = parse_decimal(text.substr(0, slash), context);
        const Rational denominator = parse_decimal(text.substr(slash + 1), context);
        if (denominator == 0) throw ValidationError(context + ": zero denominator");
        return numerator / denominator;
    }
    throw ValidationError(context + ": expected a number or fraction string");
}

Json rational_to_json(const Rational& value) { return Json(num<Rational>::str(value)); }

namespace {

const std::set<std::string> kEnvironmentKeys = {"delta", "pG", "pB", "cG", "cB",
                                                "dG",    "dB", "VG", "VB"};
const std::set<std::string> kTaskEnvironmentKeys = {"delta", "aG", "aB", "qG", "qB", "cG",
                                                    "cB",    "dG", "dB", "VG", "VB"};

template <typename R, typename Field>
EnvironmentT<R> environment_from(const Json& j, Field field) {
    const std::string context = "environment";
    check_object_keys(j, kEnvironmentKeys, context);
    EnvironmentT<R> env;
    env.discount = field(j, "delta", context);
    env.p_good = field(j, "pG", context);
    env.p_bad = field(j, "pB", context);
    env.benefit_good = field(j, "cG", context);
    env.benefit_bad = field(j, "cB", context);
    env.temptation_good = field(j, "dG", context);
    env.temptation_bad = field(j, "dB", context);
    env.social_good = field(j, "VG", context);
    env.social_bad = field(j, "VB", context);
    return env;
}

template <typename R, typename Field>
TaskEnvironmentT<R> task_environment_from(const Json& j, Field field) {
    const std::string context = "task_environment";
    check_object_keys(j, kTaskEnvironmentKeys, context);
    TaskEnvironmentT<R> env;
    env.discount = field(j, "delta", context);
    env.arrive_good = field(j, "aG", context);
    env.arrive_bad = field(j, "aB", context);
    env.cover_good = field(j, "qG", context);
    env.cover_bad = field(j, "qB", context);
    env.benefit_good = field(j, "cG", context);
    env.benefit_bad = field(j, "cB", context);
    env.temptation_good = field(j, "dG", context);
    env.temptation_bad = field(j, "dB", context);
    env.social_good = field(j, "VG", context);
    env.social_bad = field(j, "VB", context);
    return env;
}

}  // namespace

Environment environment_from_json(const Json& j) {
    return environment_from<double>(j, number_field);
}

EnvironmentQ environment_exact_from_json(const Json& j) {
    return environment_from<Rational>(j, rational_field);
}

TaskEnvironment task_environment_from_json(const Json& j) {
    return task_environment_from<double>(j, number_field);
}

TaskEnvironmentQ task_environment_exact_from_json(const Json& j) {
    return task_environment_from<Rational>(j, rational_field);
}

StageGame stage_game_from_json(const Json& j) {
    const std::string context = "stage_game";
    check_object_keys(j, {"n", "label", "payoff"}, context);
    StageGame game;
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw ValidationError(context + ": 'n' must be an integer");
    game.n = j.at("n").get<int>();
    if (!j.contains("label") || !j.at("label").is_string())
        throw ValidationError(context + ": 'label' must be \"good\" or \"bad\"");
    const std::string label = j.at("label").get<std::string>();
    if (label == "good")
        game.label = GameLabel::Good;
    else if (label == "bad")
        game.label = GameLabel::Bad;
    else
        throw ValidationError(context + ": 'label' must be \"good\" or \"bad\"");
    if (!j.contains("payoff") || !j.at("payoff").is_array() || j.at("payoff").size() != 2)
        throw ValidationError(context + ": 'payoff' must be [[pi(C,k)...],[pi(N,k)...]]");
    for (int row = 0; row < 2; ++row) {
        const Json& values = j.at("payoff").at(row);
        if (!values.is_array())
            throw ValidationError(context + ": 'payoff' rows must be arrays");
        auto& target = row == 0 ? game.coop_payoff : game.defect_payoff;
        for (size_t k = 0; k < values.size(); ++k) {
            if (!values.at(k).is_number())
                throw ValidationError(context + ": payoff entries must be numbers");
            target.push_back(values.at(k).get<double>());
        }
    }
    validate_shape(game);
    return game;
}

Json to_json(const Environment& env) {
    return Json{{"delta", env.discount}, {"pG", env.p_good},        {"pB", env.p_bad},
                {"cG", env.benefit_good}, {"cB", env.benefit_bad},  {"dG", env.temptation_good},
                {"dB", env.temptation_bad}, {"VG", env.social_good}, {"VB", env.social_bad}};
}

Json to_json(const TaskEnvironment& env) {
    return Json{{"delta", env.discount},   {"aG", env.arrive_good},  {"aB", env.arrive_bad},
                {"qG", env.cover_good},    {"qB", env.cover_bad},    {"cG", env.benefit_good},
                {"cB", env.benefit_bad},   {"dG", env.temptation_good},
                {"dB", env.temptation_bad}, {"VG", env.social_good}, {"VB", env.social_bad}};
}

Json to_json(const StageGame& game) {
    return Json{{"n", game.n},
                {"label", game.label == GameLabel::Good ? "good" : "bad"},
                {"payoff", Json::array({game.coop_payoff, game.defect_payoff})}};
}

Scenario parse_scenario(const std::string& text, bool exact) {
    const Json j = parse_json_text(text);
    check_object_keys(
        j, {"schema_version", "environment", "task_environment", "stage_game", "options"},
        "scenario");
    Scenario scenario;
    if (!j.contains("schema_version") || !j.at("schema_version").is_string())
        throw ValidationError("scenario: 'schema_version' must be a string");
    scenario.schema_version = j.at("schema_version").get<std::string>();
    if (scenario.schema_version != "1")
        throw ValidationError("scenario: unrecognized schema_version '" +
                              scenario.schema_version + "'");

    const int sections = static_cast<int>(j.contains("environment")) +
                         static_cast<int>(j.contains("task_environment")) +
                         static_cast<int>(j.contains("stage_game"));
    if (sections != 1)
        throw ValidationError(
            "scenario: exactly one of environment/task_environment/stage_game must be present");

    if (j.contains("environment")) {
        scenario.environment = environment_from_json(j.at("environment"));
        if (exact) scenario.environment_exact = environment_exact_from_json(j.at("environment"));
    }
    if (j.contains("task_environment")) {
        scenario.task_environment = task_environment_from_json(j.at("task_environment"));
        if (exact)
            scenario.task_environment_exact =
                task_environment_exact_from_json(j.at("task_environment"));
    }
    if (j.contains("stage_game")) scenario.stage_game = stage_game_from_json(j.at("stage_game"));
    scenario.options = j.contains("options") ? j.at("options") : Json::object();
    return scenario;
}

}  // namespace coopdesign
