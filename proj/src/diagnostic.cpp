#include "orbi/diagnostic.hpp"

#include <json.hpp>

namespace orbi {

std::string format_line(const Diagnostic& d) {
  std::string file = d.loc.file.empty() ? "<input>" : d.loc.file;
  return file + ":" + std::to_string(d.loc.line) + ":" +
         std::to_string(d.loc.col) + ": [" + d.code + "] " + d.message;
}

std::string format_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["file"] = d.loc.file;
  j["line"] = d.loc.line;
  j["col"] = d.loc.col;
  j["code"] = d.code;
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["message"] = d.message;
  j["hint"] = d.hint;
  return j.dump();
}

}  // namespace orbi
