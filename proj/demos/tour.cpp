// A short walk through the library: a few verdicts, a G-signature check and
// a seeded sample.
#include "nrz/diagonal.hpp"
#include "nrz/g_signature.hpp"
#include "nrz/ht_odd.hpp"
#include "nrz/samplers.hpp"

#include <iostream>

int main() {
  using namespace nrz;

  for (const char* ct : {"3,3", "3,5,15", "3,5,7", "1,3,5,7"}) {
    auto v = verdict_odd_element(parse_cycle_type(ct));
    std::cout << "odd cycle type (" << ct << "): " << status_name(v.status);
    if (!v.witnesses.empty()) std::cout << " [" << v.witnesses.front().rule << "]";
    std::cout << '\n';
  }

  auto h = parse_subspace("11000\n00110\n00011");
  std::cout << "diagonal rank-3 group at n=5: " << status_name(verdict_diagonal(h).status) << '\n';

  auto g = verify_gsignature_cp2(1, 2, 5);
  std::cout << "G-signature (1,2;5): lhs " << g.lhs.get_str() << ", holds " << std::boolalpha << g.holds << '\n';

  RandomStream rs(42);
  auto sample = sample_odd_order_perm(1000, Rational(1, 2), rs);
  std::cout << "odd-order permutation of 1000, theta=1/2: " << sample.num_cycles() << " cycles, "
            << sample.count(1) << " fixed points, P_n = " << prime_cycle_count(sample) << '\n';
}
