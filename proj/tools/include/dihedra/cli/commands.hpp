#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dihedra/angles.hpp"
#include "dihedra/cli/problem.hpp"

namespace dihedra::cli {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Emit { Text, Json };
enum class Engine { Default, Flow, Lp, Oracle };

inline const std::vector<std::string> kCommands = {"describe", "check", "check-oracle", "flow",    "lp",      "realize",
                                                   "shear",    "stellate", "m3-check",  "m3-normal"};

struct Options {
  std::string command;
  Engine engine = Engine::Default;
  std::string epsilon = "auto";  // auto, lcm or p/q
  bool weak = false;             // non-strict flow / weak hyperbolic structure suffices
  int max_count = 1;             // m3-normal enumeration bound
};

struct CommandResult {
  int exit_code = 0;  // 0 feasible/pass, 1 infeasible/fail, 2 usage or input error
  Json doc;
};

// Throws UsageError, MissingData and the library's argument errors.
CommandResult run_command(const Options& options, const ProblemFile& problem);

// Parses then runs; input errors become exit 2 with an "error" object.
CommandResult run_file(const Options& options, const std::string& path);

// Rationals as "p/q" strings; doubles with 12 significant digits.
Json rational_json(const Rational& value);
Rational rational_from_json(const Json& value);
double round12(double value);

Json to_json(const FeasibilityReport& report);
FeasibilityReport feasibility_from_json(const Json& doc, int face_count);

std::string render_text(const Json& doc);
std::string render(const CommandResult& result, Emit emit);

}  // namespace dihedra::cli
