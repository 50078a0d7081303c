#pragma once

#include "tropab/json_io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tropab::cli {

struct Options {
  int window = 4;
  double tol = 1e-10;
  int degree_bound = 3;
  std::string format = "json";
};

// (name, one-line summary) per subcommand.
const std::vector<std::pair<std::string, std::string>>& command_table();
const std::vector<std::string>& command_names();

// Runs one subcommand on its input document. Throws tropab::Error for domain
// errors and io::SchemaError / std::invalid_argument for malformed input.
io::Json run_command(const std::string& name, const io::Json& input, const Options& opt);

// "key: value" lines for the top-level members.
std::string as_text(const io::Json& doc);

}  // namespace tropab::cli
