#pragma once
#include <string>

#include "rzeta/ratfunc.hpp"

namespace rzeta {

/// Directory holding the versioned table fixtures.  Resolution order:
/// explicit override, RZETA_DATA_DIR environment variable, compiled default.
std::string data_dir();
void set_data_dir(const std::string& dir);

std::string read_file(const std::string& path);

struct TheoremB {
  LaurentPoly F;
  LaurentPoly G;
  std::vector<std::pair<int, int>> g_factors;  // (a, b) for 1 - q^a t^b
  int g_prefactor_q_exp = 0;
};

/// The Theorem B reference polynomials, transcribed in data/theorem_b.json.
TheoremB load_theorem_b();

}  // namespace rzeta
