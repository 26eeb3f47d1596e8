// Writes the synthetic eigen-record fixtures for p = 5, m = 1.
#include <fstream>
#include <iostream>

#include "cuspann/hecke.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures OUT.json\n";
    return 2;
  }
  try {
    auto M = cuspann::KummerModel::build(cuspann::GlobalParams::make(5));
    std::ofstream out(argv[1]);
    out << cuspann::write_forms(cuspann::generate_fixtures(M));
    return out.good() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
