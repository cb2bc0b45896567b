#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otarith/errors.hpp"
#include "otarith/torsion_growth.hpp"
#include "otarith_cli/document.hpp"

namespace otarith::cli {

inline constexpr std::string_view kToolVersion = "0.3.0";

struct CommandArgs {
  unsigned long prime = 2;
  unsigned depth = 3;
};

const std::vector<std::string>& subcommands();

// Result record of one subcommand. Throws otarith::Error.
json run_command(std::string_view cmd, const InputDocument& doc, const Options& opt, const CommandArgs& args = {});

// {tool, version, command, options, input, result}
json report(std::string_view cmd, const InputDocument& doc, const Options& opt, json result);
json error_report(std::string_view cmd, ErrorCode code, const std::string& message);

// 0 success, 2 refusal, 1 anything else.
int exit_code(ErrorCode code);

GrowthReport run_growth(const InputDocument& doc, const Options& opt);
std::string growth_csv(const GrowthReport& rep);
std::string growth_summary(const GrowthReport& rep);

// x^3 + m x - 1 for m = 1..10 and x^4 - 2, keyed by file stem.
std::vector<std::pair<std::string, json>> corpus_documents();

}  // namespace otarith::cli
