#include "emk/bernoulli.hpp"

#include <deque>
#include <mutex>

namespace emk {

const BernoulliData& bernoulli(int n) {
  if (n < 0) throw Error("bernoulli: negative index");
  // deque: references handed out stay valid while the table grows
  static std::deque<BernoulliData> table;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  while (static_cast<int>(table.size()) <= n) {
    int k = static_cast<int>(table.size());
    Polynomial s = Polynomial::variable(1, 0);
    Polynomial b = s.pow(k);
    Polynomial correction(1);
    for (int j = 0; j < k; ++j)
      correction += table[static_cast<std::size_t>(j)].polynomial.scale(Rational(binomial(k + 1, j)));
    b -= correction.scale(Rational(1, k + 1));
    BernoulliData data;
    data.polynomial = b;
    data.number = b.eval({Rational(0)});
    table.push_back(std::move(data));
  }
  return table[static_cast<std::size_t>(n)];
}

}  // namespace emk
