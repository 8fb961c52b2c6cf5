#include "ivp/report.hpp"

#include <ctime>
#include <fstream>
#include <iostream>

#include "ivp/error.hpp"

namespace ivp {

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

nlohmann::json base_report(const std::string& command) {
  nlohmann::json j;
  j["tool"] = "ivplab";
  j["version"] = kVersion;
  j["command"] = command;
  j["generated_at"] = iso_timestamp();
  j["config"] = nlohmann::json::object();
  return j;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ivp
