#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "otarith_cli/commands.hpp"

namespace {

using namespace otarith;
using namespace otarith::cli;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int write_corpus(const std::string& out_dir) {
  auto docs = corpus_documents();
  if (out_dir.empty()) {
    json all = json::array();
    for (const auto& [name, doc] : docs) all.push_back({{"name", name}, {"document", doc}});
    std::cout << all.dump(2) << '\n';
    return 0;
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, doc] : docs) {
    std::ofstream f(std::filesystem::path(out_dir) / (name + ".json"));
    f << doc.dump(2) << '\n';
  }
  std::cerr << "wrote " << docs.size() << " documents to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic invariants of Oeljeklaus-Toma manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  OptionOverrides flags;
  CommandArgs args;
  std::string input;
  std::string output = "json";
  std::string corpus_dir;

  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    if (name == "corpus") {
      sub->description("Print the bundled corpus, or write it to --out");
      sub->add_option("--out", corpus_dir, "Directory for one JSON file per document");
      continue;
    }
    sub->add_option("input", input, "Input document (JSON)")->required();
    sub->add_option("--precision-bits", flags.precision_bits, "Certified embedding precision")->check(CLI::Range(32u, 65536u));
    sub->add_option("--enum-cap", flags.enum_cap, "Largest residue ring enumerated")->check(CLI::PositiveNumber);
    sub->add_option("--horizon", flags.horizon, "Last n in the growth sequence")->check(CLI::Range(4ul, 100000ul));
    sub->add_option("--output", output, "json or csv (growth only)")->check(CLI::IsMember({"json", "csv"}));
    if (name == "chain") {
      sub->add_option("--prime", args.prime, "Covering degree per level")->check(CLI::Range(2ul, 1000ul));
      sub->add_option("--depth", args.depth, "Number of covering steps")->check(CLI::Range(1u, 12u));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "corpus") return write_corpus(corpus_dir);

  try {
    InputDocument doc = parse_input(read_file(input));
    Options opt = resolve_options(doc, flags, std::getenv("OTARITH_ENUM_CAP"));
    if (output == "csv") {
      if (cmd != "growth") fail(ErrorCode::ParseError, "--output csv is only available for growth");
      GrowthReport g = run_growth(doc, opt);
      std::cout << growth_csv(g);
      std::cerr << growth_summary(g);
      return 0;
    }
    json result = run_command(cmd, doc, opt, args);
    int rc = 0;
    if (cmd == "verify" && !result["passed"].get<bool>()) rc = 1;
    std::cout << report(cmd, doc, opt, std::move(result)).dump(2) << '\n';
    return rc;
  } catch (const Error& e) {
    std::cout << error_report(cmd, e.code(), e.what()).dump(2) << '\n';
    std::cerr << "otarith: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cout << error_report(cmd, ErrorCode::Internal, e.what()).dump(2) << '\n';
    std::cerr << "otarith: Internal: " << e.what() << '\n';
    return 1;
  }
}
