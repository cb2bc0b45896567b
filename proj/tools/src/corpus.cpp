#include "otarith_cli/commands.hpp"

namespace otarith::cli {

std::vector<std::pair<std::string, json>> corpus_documents() {
  std::vector<std::pair<std::string, json>> out;
  for (int m = 1; m <= 10; ++m) {
    json field;
    field["min_poly"] = json::array({"-1", std::to_string(m), "0", "1"});
    // Z[theta] is not maximal at 5 (m = 8) and at 3 (m = 9).
    if (m == 8) field["integral_basis"] = json::array({json::array({"1", "0", "0"}), json::array({"0", "1", "0"}),
                                                       json::array({"2/5", "3/5", "1/5"})});
    if (m == 9) field["integral_basis"] = json::array({json::array({"1", "0", "0"}), json::array({"0", "1", "0"}),
                                                       json::array({"1/3", "-2/3", "1/3"})});
    json doc;
    doc["field"] = field;
    doc["subgroup"] = {{"generators", json::array({json::array({"0", "1", "0"})})}};
    doc["modulus"] = {{"from_subgroup", true}, {"real_places", "all"}};
    out.emplace_back("cubic_m" + std::string(m < 10 ? "0" : "") + std::to_string(m), std::move(doc));
  }
  json quartic;
  quartic["field"] = {{"min_poly", json::array({"-2", "0", "0", "0", "1"})}};
  // (1 + a)^2 = 1 + 2a + a^2 and 1 + a^2, a = 2^(1/4).
  quartic["units"] = {{"totally_positive_fundamental",
                       json::array({json::array({"1", "2", "1", "0"}), json::array({"1", "0", "1", "0"})})},
                      {"provenance", "input"}};
  quartic["subgroup"] = {{"generators", json::array({json::array({"1", "2", "1", "0"}), json::array({"1", "0", "1", "0"})})}};
  quartic["modulus"] = {{"from_subgroup", true}, {"real_places", "all"}};
  out.emplace_back("quartic_x4m2", std::move(quartic));
  return out;
}

}  // namespace otarith::cli
