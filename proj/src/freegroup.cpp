#include "coblab/freegroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace coblab {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw std::invalid_argument("rank must be in [1, " + std::to_string(kMaxRank) +
                                "], got " + std::to_string(rank));
  }
}

// Appends `letter` to a reduced buffer, cancelling against the tail.
void push_reduced(std::vector<Letter>& out, Letter letter) {
  if (!out.empty() && out.back() == letter.inverse()) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("ball too large to index");
    }
    result *= base;
  }
  return result;
}

}  // namespace

char Letter::symbol() const {
  const char lower = static_cast<char>('a' + index - 1);
  return sign > 0 ? lower : static_cast<char>(lower - 'a' + 'A');
}

ReducedWord::ReducedWord(int rank) : rank_(rank) { check_rank(rank); }

ReducedWord::ReducedWord(int rank, std::span<const Letter> letters) : rank_(rank) {
  check_rank(rank);
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l.index < 1 || l.index > rank || (l.sign != 1 && l.sign != -1)) {
      throw std::invalid_argument("letter outside rank " + std::to_string(rank));
    }
    push_reduced(letters_, l);
  }
}

ReducedWord ReducedWord::parse(std::string_view text, int rank) {
  check_rank(rank);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    Letter l;
    if (c >= 'a' && c <= 'z') {
      l = {static_cast<std::uint8_t>(c - 'a' + 1), 1};
    } else if (c >= 'A' && c <= 'Z') {
      l = {static_cast<std::uint8_t>(c - 'A' + 1), -1};
    } else {
      throw std::invalid_argument("invalid character '" + std::string(1, c) + "' in word '" +
                                  std::string(text) + "'");
    }
    if (l.index > rank) {
      throw std::invalid_argument("letter '" + std::string(1, c) + "' exceeds rank " +
                                  std::to_string(rank));
    }
    push_reduced(letters, l);
  }
  return ReducedWord(rank, std::move(letters), Trusted{});
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return ReducedWord(rank_, std::move(out), Trusted{});
}

std::string ReducedWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l.symbol());
  return s;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i].order_key() <=> b[i].order_key(); c != 0) return c;
  }
  return a.rank_ <=> b.rank_;
}

ReducedWord multiply(const ReducedWord& g, const ReducedWord& h) {
  if (g.rank() != h.rank()) {
    throw std::invalid_argument("rank mismatch: " + std::to_string(g.rank()) + " vs " +
                                std::to_string(h.rank()));
  }
  std::size_t cancel = 0;
  while (cancel < g.size() && cancel < h.size() &&
         g[g.size() - 1 - cancel] == h[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(g.size() + h.size() - 2 * cancel);
  out.insert(out.end(), g.letters_.begin(), g.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), h.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), h.letters_.end());
  return ReducedWord(g.rank(), std::move(out), ReducedWord::Trusted{});
}

std::uint64_t count_occurrences(std::span<const Letter> w, std::span<const Letter> g) {
  if (w.empty()) throw std::invalid_argument("count_occurrences: empty pattern");
  if (w.size() > g.size()) return 0;
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + w.size() <= g.size(); ++i) {
    if (std::equal(w.begin(), w.end(), g.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

std::uint64_t count_occurrences(const ReducedWord& w, const ReducedWord& g) {
  return count_occurrences(w.letters(), g.letters());
}

std::int64_t brooks_value(const ReducedWord& w, const ReducedWord& g) {
  if (w.empty()) throw std::invalid_argument("brooks_value: empty word");
  const ReducedWord w_inv = w.inverse();
  return static_cast<std::int64_t>(count_occurrences(w, g)) -
         static_cast<std::int64_t>(count_occurrences(w_inv, g));
}

std::uint64_t ball_size(int rank, int radius) {
  check_rank(rank);
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  std::uint64_t total = 1;
  for (int n = 1; n <= radius; ++n) {
    const std::uint64_t layer = 2 * static_cast<std::uint64_t>(rank) * checked_pow(2 * rank - 1, n - 1);
    if (total > std::numeric_limits<std::uint64_t>::max() - layer) {
      throw std::overflow_error("ball too large to index");
    }
    total += layer;
  }
  return total;
}

ReducedWord word_at(int rank, std::uint64_t index) {
  check_rank(rank);
  const std::uint64_t branch = 2 * static_cast<std::uint64_t>(rank) - 1;
  if (index == 0) return ReducedWord(rank);
  index -= 1;
  int length = 1;
  for (;;) {
    const std::uint64_t layer = (branch + 1) * checked_pow(branch, length - 1);
    if (index < layer) break;
    index -= layer;
    ++length;
  }
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  std::uint64_t block = checked_pow(branch, length - 1);
  int key = static_cast<int>(index / block);
  index %= block;
  letters.push_back(Letter::from_order_key(key));
  for (int pos = 1; pos < length; ++pos) {
    block /= branch;
    int digit = static_cast<int>(index / block);
    index %= block;
    const int forbidden = letters.back().inverse().order_key();
    key = digit >= forbidden ? digit + 1 : digit;
    letters.push_back(Letter::from_order_key(key));
  }
  return ReducedWord(rank, std::move(letters), ReducedWord::Trusted{});
}

Ball::Ball(int rank, int radius) : rank_(rank), radius_(radius) {
  check_rank(rank);
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
}

Ball::iterator::iterator(int rank, int radius)
    : radius_(radius), done_(false), current_(rank) {}

Ball::iterator& Ball::iterator::operator++() {
  if (done_) return *this;
  auto& letters = current_.letters_;
  const int keys = 2 * current_.rank();
  auto smallest_after = [](const std::vector<Letter>& w, std::size_t pos) {
    if (pos == 0) return 0;
    return w[pos - 1].inverse().order_key() == 0 ? 1 : 0;
  };
  // Odometer step: bump the last position that can still grow, reset the tail.
  for (std::size_t pos = letters.size(); pos-- > 0;) {
    int key = letters[pos].order_key() + 1;
    if (pos > 0 && key == letters[pos - 1].inverse().order_key()) ++key;
    if (key < keys) {
      letters[pos] = Letter::from_order_key(key);
      for (std::size_t tail = pos + 1; tail < letters.size(); ++tail) {
        letters[tail] = Letter::from_order_key(smallest_after(letters, tail));
      }
      return *this;
    }
  }
  if (static_cast<int>(letters.size()) >= radius_) {
    done_ = true;
    return *this;
  }
  letters.assign(letters.size() + 1, Letter{});
  for (std::size_t pos = 0; pos < letters.size(); ++pos) {
    letters[pos] = Letter::from_order_key(smallest_after(letters, pos));
  }
  return *this;
}

std::vector<ReducedWord> ball_words(int rank, int radius) {
  Ball ball(rank, radius);
  std::vector<ReducedWord> words;
  words.reserve(ball.size());
  for (const auto& w : ball) words.push_back(w);
  return words;
}

DefectResult defect_search(const ReducedWord& w, int radius, unsigned workers) {
  if (w.empty()) throw std::invalid_argument("defect_search: empty word");
  const std::vector<ReducedWord> ball = ball_words(w.rank(), radius);
  const ReducedWord w_inv = w.inverse();
  auto f = [&](std::span<const Letter> g) {
    return static_cast<std::int64_t>(count_occurrences(w.letters(), g)) -
           static_cast<std::int64_t>(count_occurrences(w_inv.letters(), g));
  };
  std::vector<std::int64_t> values(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) values[i] = f(ball[i].letters());

  struct Best {
    std::int64_t value = -1;
    std::size_t g = 0, h = 0;
  };
  auto scan = [&](std::size_t g_begin, std::size_t g_end) {
    Best best;
    std::vector<Letter> product;
    for (std::size_t gi = g_begin; gi < g_end; ++gi) {
      const auto g = ball[gi].letters();
      for (std::size_t hi = 0; hi < ball.size(); ++hi) {
        const auto h = ball[hi].letters();
        std::size_t cancel = 0;
        while (cancel < g.size() && cancel < h.size() &&
               g[g.size() - 1 - cancel] == h[cancel].inverse()) {
          ++cancel;
        }
        product.assign(g.begin(), g.end() - static_cast<std::ptrdiff_t>(cancel));
        product.insert(product.end(), h.begin() + static_cast<std::ptrdiff_t>(cancel), h.end());
        const std::int64_t defect = std::llabs(f(product) - values[gi] - values[hi]);
        if (defect > best.value) best = {defect, gi, hi};
      }
    }
    return best;
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(ball.size())));
  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = scan(0, ball.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (ball.size() + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
      const std::size_t lo = std::min(ball.size(), k * chunk);
      const std::size_t hi = std::min(ball.size(), lo + chunk);
      threads.emplace_back([&, k, lo, hi] { partial[k] = scan(lo, hi); });
    }
    for (auto& t : threads) t.join();
  }
  // Chunks are in g-order, so the first strict maximum is the least witness.
  Best best;
  for (const Best& b : partial) {
    if (b.value > best.value) best = b;
  }
  return {best.value, ball[best.g], ball[best.h]};
}

}  // namespace coblab

std::size_t std::hash<coblab::ReducedWord>::operator()(const coblab::ReducedWord& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9E3779B97F4A7C15ull;
  for (coblab::Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(l.order_key() + 1) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}
