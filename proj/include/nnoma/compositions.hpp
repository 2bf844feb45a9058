#pragma once

#include <cstddef>
#include <iterator>
#include <vector>

namespace nnoma {

/// One weak composition (k_0, ..., k_{parts-1}) of `total`.
struct Composition {
  std::vector<int> parts;
  int total = 0;
  double multinomial = 1;      // total! / prod k_i!, exact while below 2^53
  double log_multinomial = 0;  // natural log of the same
};

/// total! / prod k_i! for the given parts; exact in double while below 2^53.
double multinomial_coefficient(const std::vector<int>& parts);

/// Number of weak compositions of `total` into `parts` parts, C(total+parts-1, parts-1).
double composition_count(int total, int parts);

/// Lazily enumerates all weak compositions of `total` into `parts` parts,
/// starting at (total, 0, ..., 0) and ending at (0, ..., 0, total).
/// Memory is O(parts). Single consumer.
class CompositionStream {
 public:
  CompositionStream(int total, int parts);

  bool done() const { return done_; }
  const Composition& current() const { return current_; }
  void advance();

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    iterator() = default;
    explicit iterator(CompositionStream* s) : stream_(s) {}
    reference operator*() const { return stream_->current(); }
    pointer operator->() const { return &stream_->current(); }
    iterator& operator++() {
      stream_->advance();
      return *this;
    }
    void operator++(int) { stream_->advance(); }
    bool operator==(std::default_sentinel_t) const { return stream_->done(); }

   private:
    CompositionStream* stream_ = nullptr;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  void refresh_coefficient();

  Composition current_;
  bool done_ = false;
};

}  // namespace nnoma
