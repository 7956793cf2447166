#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coblab {

/// Largest supported rank: generators are spelled a..z.
inline constexpr int kMaxRank = 26;

/// A generator (sign +1) or its inverse (sign -1).
struct Letter {
  std::uint8_t index = 1;
  std::int8_t sign = 1;

  constexpr Letter inverse() const { return {index, static_cast<std::int8_t>(-sign)}; }

  /// Position in the letter order a < A < b < B < ...
  constexpr int order_key() const { return 2 * (index - 1) + (sign < 0 ? 1 : 0); }
  static constexpr Letter from_order_key(int key) {
    return {static_cast<std::uint8_t>(key / 2 + 1), static_cast<std::int8_t>(key % 2 ? -1 : 1)};
  }

  char symbol() const;

  friend constexpr bool operator==(Letter, Letter) = default;
};

/// A freely reduced word over a fixed rank; the empty word is the identity.
/// Every constructor reduces its input, so a ReducedWord is always reduced.
class ReducedWord {
 public:
  explicit ReducedWord(int rank = 2);
  ReducedWord(int rank, std::span<const Letter> letters);

  /// Lowercase letters are generators, uppercase their inverses, "" is e.
  static ReducedWord parse(std::string_view text, int rank);
  static ReducedWord identity(int rank) { return ReducedWord(rank); }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  ReducedWord inverse() const;
  std::string str() const;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  /// Length-lexicographic with a < A < b < B < ...; rank breaks ties last.
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b);

 private:
  struct Trusted {};
  ReducedWord(int rank, std::vector<Letter> letters, Trusted)
      : rank_(rank), letters_(std::move(letters)) {}

  int rank_;
  std::vector<Letter> letters_;

  friend ReducedWord multiply(const ReducedWord&, const ReducedWord&);
  friend ReducedWord word_at(int, std::uint64_t);
  friend class Ball;
};

/// Free-group product; throws std::invalid_argument on rank mismatch.
ReducedWord multiply(const ReducedWord& g, const ReducedWord& h);
inline ReducedWord operator*(const ReducedWord& g, const ReducedWord& h) { return multiply(g, h); }

/// Number of (possibly overlapping) occurrences of w as a factor of g.
std::uint64_t count_occurrences(std::span<const Letter> w, std::span<const Letter> g);
std::uint64_t count_occurrences(const ReducedWord& w, const ReducedWord& g);

/// Brooks counting quasimorphism f_w(g).
std::int64_t brooks_value(const ReducedWord& w, const ReducedWord& g);

/// Number of reduced words of length <= radius.
std::uint64_t ball_size(int rank, int radius);

/// The index-th word of the ball in length-lexicographic order.
ReducedWord word_at(int rank, std::uint64_t index);

/// Lazy enumeration of ball(radius) in length-lexicographic order.
class Ball {
 public:
  Ball(int rank, int radius);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ReducedWord;
    using difference_type = std::ptrdiff_t;
    using reference = const ReducedWord&;
    using pointer = const ReducedWord*;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    friend class Ball;
    iterator(int rank, int radius);
    int radius_ = 0;
    bool done_ = true;
    ReducedWord current_;
  };

  iterator begin() const { return iterator(rank_, radius_); }
  iterator end() const { return {}; }
  std::uint64_t size() const { return ball_size(rank_, radius_); }

 private:
  int rank_;
  int radius_;
};

std::vector<ReducedWord> ball_words(int rank, int radius);

struct DefectResult {
  std::int64_t max = 0;
  ReducedWord g;
  ReducedWord h;
};

/// Max of |f_w(gh) - f_w(g) - f_w(h)| over ball(radius)^2 with the
/// length-lexicographically least maximizing pair.
DefectResult defect_search(const ReducedWord& w, int radius, unsigned workers = 1);

}  // namespace coblab

template <>
struct std::hash<coblab::ReducedWord> {
  std::size_t operator()(const coblab::ReducedWord& w) const noexcept;
};
