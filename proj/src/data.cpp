#include "rzeta/data.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace rzeta {

namespace {
std::string g_data_dir;  // explicit override
}

void set_data_dir(const std::string& dir) { g_data_dir = dir; }

std::string data_dir() {
  if (!g_data_dir.empty()) return g_data_dir;
  if (const char* env = std::getenv("RZETA_DATA_DIR")) return env;
#ifdef RZETA_DATA_DIR
  return RZETA_DATA_DIR;
#else
  return "data";
#endif
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TheoremB load_theorem_b() {
  auto j = nlohmann::json::parse(read_file(data_dir() + "/theorem_b.json"));
  TheoremB tb;
  for (auto& t : j["F"]) tb.F.add_term(t[0].get<int>(), t[1].get<int>(), t[2].get<int64_t>());
  for (auto& t : j["G"]) tb.G.add_term(t[0].get<int>(), t[1].get<int>(), t[2].get<int64_t>());
  tb.g_prefactor_q_exp = j["G_factored"]["prefactor_q_exp"].get<int>();
  for (auto& f : j["G_factored"]["factors"])
    tb.g_factors.emplace_back(f[0].get<int>(), f[1].get<int>());
  return tb;
}

}  // namespace rzeta
