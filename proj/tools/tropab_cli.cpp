#include "commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using tropab::io::Json;

namespace {

void emit(const Json& doc, const std::string& format) {
  if (format == "text")
    std::cout << tropab::cli::as_text(doc);
  else
    std::cout << doc.dump(2) << '\n';
}

int input_error(const std::string& message, const std::string& field, const std::string& format) {
  emit({{"kind", "error"}, {"code", "MalformedInput"}, {"message", message}, {"field", field}}, format);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice, paving, Siegel and theta-group computations.\nReads a JSON job, writes a JSON result."};
  app.require_subcommand(1, 1);
  app.fallthrough();

  tropab::cli::Options opt;
  std::string input_path = "-";
  std::string inline_json;
  app.add_option("--window", opt.window, "Search window radius")->check(CLI::PositiveNumber);
  app.add_option("--tol", opt.tol, "Floating-point tolerance for the Siegel commands")->check(CLI::PositiveNumber);
  app.add_option("--degree-bound", opt.degree_bound, "Degree bound for monoid checks")->check(CLI::NonNegativeNumber);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  auto* in_opt = app.add_option("--input", input_path, "Input file, or - for stdin");
  app.add_option("--json", inline_json, "Inline JSON input")->excludes(in_opt);

  for (const auto& [name, summary] : tropab::cli::command_table()) app.add_subcommand(name, summary);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Json input;
  try {
    if (!inline_json.empty()) {
      input = Json::parse(inline_json);
    } else if (input_path == "-") {
      input = Json::parse(std::cin);
    } else {
      std::ifstream f(input_path);
      if (!f) return input_error("cannot open " + input_path, "input", opt.format);
      input = Json::parse(f);
    }
  } catch (const Json::exception& e) {
    return input_error(e.what(), "", opt.format);
  }

  try {
    emit(tropab::cli::run_command(name, input, opt), opt.format);
    return 0;
  } catch (const tropab::Error& e) {
    emit({{"kind", "error"}, {"code", tropab::error_name(e.code())}, {"message", e.what()}, {"field", e.field()}},
         opt.format);
    return 1;
  } catch (const tropab::io::SchemaError& e) {
    return input_error(e.what(), e.field(), opt.format);
  } catch (const Json::exception& e) {
    return input_error(e.what(), "", opt.format);
  } catch (const std::invalid_argument& e) {
    return input_error(e.what(), "", opt.format);
  }
}
