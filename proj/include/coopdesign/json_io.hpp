#ifndef COOPDESIGN_JSON_IO_HPP
#define COOPDESIGN_JSON_IO_HPP

#include <json.hpp>

#include <optional>
#include <set>
#include <string>

#include "coopdesign/chain.hpp"
#include "coopdesign/stage_game.hpp"
#include "coopdesign/static_assignment.hpp"

namespace coopdesign {

using Json = nlohmann::json;

// Parses JSON text, mapping syntax errors to ValidationError with a
// line/column location.
Json parse_json_text(const std::string& text);

// Strict-schema helper: every key of `object` must be in `allowed`.
void check_object_keys(const Json& object, const std::set<std::string>& allowed,
                       const std::string& context);

// Exact-mode numeric parsing: accepts JSON numbers, integer strings,
// fraction strings "p/q", and decimal strings "0.6" (these parse exactly).
Rational rational_from_json(const Json& value, const std::string& context);
Json rational_to_json(const Rational& value);

// ---------------------------------------------------------------------------
// Scenario: the CLI input document.
// ---------------------------------------------------------------------------

struct Scenario {
    std::string schema_version;
    std::optional<Environment> environment;
    std::optional<TaskEnvironment> task_environment;
    std::optional<EnvironmentQ> environment_exact;        // populated in exact mode
    std::optional<TaskEnvironmentQ> task_environment_exact;
    std::optional<StageGame> stage_game;
    Json options;  // command-specific block, validated by the command
};

Scenario parse_scenario(const std::string& text, bool exact);

Environment environment_from_json(const Json& j);
EnvironmentQ environment_exact_from_json(const Json& j);
TaskEnvironment task_environment_from_json(const Json& j);
TaskEnvironmentQ task_environment_exact_from_json(const Json& j);
StageGame stage_game_from_json(const Json& j);

Json to_json(const Environment& env);
Json to_json(const TaskEnvironment& env);
Json to_json(const StageGame& game);

}  // namespace coopdesign

#endif  // COOPDESIGN_JSON_IO_HPP
