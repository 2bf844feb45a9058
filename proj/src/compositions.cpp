#include "nnoma/compositions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnoma {

namespace {

// C(n, k) built incrementally; every intermediate is an integer.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

}  // namespace

double multinomial_coefficient(const std::vector<int>& parts) {
  double c = 1;
  int running = 0;
  for (int k : parts) {
    running += k;
    c *= binomial(running, k);
  }
  return c;
}

double composition_count(int total, int parts) { return binomial(total + parts - 1, parts - 1); }

CompositionStream::CompositionStream(int total, int parts) {
  if (total < 0 || parts < 1) throw std::invalid_argument("CompositionStream: need total >= 0, parts >= 1");
  current_.parts.assign(parts, 0);
  current_.parts[0] = total;
  current_.total = total;
  refresh_coefficient();
}

void CompositionStream::advance() {
  if (done_) return;
  auto& k = current_.parts;
  const std::size_t last = k.size() - 1;
  const int tail = k[last];
  k[last] = 0;
  std::size_t i = last;
  while (i > 0 && k[i - 1] == 0) --i;
  if (i == 0) {
    done_ = true;
    return;
  }
  --k[i - 1];
  k[i] = tail + 1;
  refresh_coefficient();
}

void CompositionStream::refresh_coefficient() {
  double log_c = std::lgamma(current_.total + 1.0);
  for (int k : current_.parts) log_c -= std::lgamma(k + 1.0);
  current_.log_multinomial = log_c;
  current_.multinomial = multinomial_coefficient(current_.parts);
}

}  // namespace nnoma
