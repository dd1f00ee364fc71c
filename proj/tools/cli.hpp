#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace paramod::cli {

struct Report {
  std::string command;
  std::string inputs_digest;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

std::string sha256_hex(const std::string& data);

// argv without the program name. Exit codes: 0 ok, 1 domain error, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paramod::cli
