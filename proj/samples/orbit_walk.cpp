// Walks the rotation orbits of the 5 x 6 Dyck paths and prints the sweep
// exponents of each member next to its r-value.

#include <iostream>

#include <rectlab/rectlab.hpp>

int main(int argc, char** argv) {
  using namespace rectlab;
  const int m = argc > 2 ? std::stoi(argv[1]) : 5;
  const int n = argc > 2 ? std::stoi(argv[2]) : 6;

  for (const auto& o : orbit_partition(m, n)) {
    const auto [bq, bt] = sweep_exponents(o.base);
    std::cout << o.base.steps() << "  (q^" << bq << " t^" << bt << ")\n";
    for (int k = 1; k < m; ++k) {
      const auto [q, t] = sweep_exponents(o.members[k]);
      std::cout << "  phi_" << k << " " << o.members[k].steps() << "  r=" << o.r[k] << "  (q^" << q << " t^" << t << ")\n";
    }
  }
}
