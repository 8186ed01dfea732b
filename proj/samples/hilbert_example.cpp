// Both sides of the 2 x 3 rectangular paths identity, paired with h_{1^3}.

#include <iostream>

#include <rectlab/rectlab.hpp>

int main() {
  using namespace rectlab;
  const ExactField ex;
  const MacdonaldOps<ExactField> ops(ex);
  const Partition col{1, 1, 1};

  // [2]_q p_{2,3} in the monomial basis; gcd(2,3) = 1 so the prefactor is [2]_q.
  const auto lhs = ops.convert(ops.pmn(2, 3), Basis::monomial).scaled(QTRational(q_integer(2)));
  std::cout << "operator side: " << lhs.coeff(col, ex).to_string() << '\n';

  const auto rhs = comb_gf(PathFamily::all, 2, 3, 0);
  std::cout << "paths side:    " << rhs.gf.coeff(col, ex).to_string() << "  (" << rhs.paths << " paths)\n";

  for (const auto& p : rect_paths(2, 3, false)) {
    const StatRecord s = path_stats(p);
    std::cout << "  " << p.steps() << "  area " << s.area << "  cdinv+bonus " << s.cdinv + s.bonus << '\n';
  }
  return ops.equal(lhs, rhs.gf) ? 0 : 1;
}
