#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopforge {

// Symbol codes: 0 is '0', 1+2k is open_k, 2+2k is close_k.
using Symbol = std::uint8_t;

inline Symbol open_symbol(int k) { return static_cast<Symbol>(1 + 2 * k); }
inline Symbol close_symbol(int k) { return static_cast<Symbol>(2 + 2 * k); }
inline bool is_open(Symbol s) { return s % 2 == 1; }
inline bool is_close(Symbol s) { return s != 0 && s % 2 == 0; }
inline int symbol_color(Symbol s) { return (s - 1) / 2; }

struct MotzkinWord {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  bool operator==(const MotzkinWord&) const = default;
  auto operator<=>(const MotzkinWord&) const = default;
};

// "(10)1" style: parenthesis followed by a 1-based color digit. Digits are
// omitted when every parenthesis has color 0.
std::string to_string(const MotzkinWord& w);
MotzkinWord parse_word(const std::string& text);

enum class Sector { Balanced, PrefixValid, All };

constexpr std::size_t kWordCap = 20'000'000;

std::vector<MotzkinWord> enumerate_words(int n, int d, Sector sector, std::size_t cap = kWordCap);

struct StackProfile {
  std::vector<std::string> theta;  // unmatched open colors after each symbol
  std::vector<int> heights;        // h_1..h_n
  long area = 0;
};

StackProfile stack_profile(const MotzkinWord& w);
bool is_balanced(const MotzkinWord& w);
long area(const MotzkinWord& w);

struct MatchingLine {
  int open_index;
  int close_index;
  int color;
};

std::vector<MatchingLine> matching_lines(const MotzkinWord& w);
int crossings(const MotzkinWord& w, int cut);

struct CyclicBalance {
  bool balanced;
  int origin;
};

CyclicBalance cyclic_balanced(const MotzkinWord& w);
MotzkinWord rotate(const MotzkinWord& w, int r);
// Area of the canonical rotation; the word must be cyclically balanced.
long cyclic_area(const MotzkinWord& w);
// Post-symbol heights of each position relative to the cyclic minimum.
std::vector<int> cyclic_heights(const MotzkinWord& w);
MotzkinWord reverse_flip(const MotzkinWord& w);

// All cyclically balanced words of a given length, sorted.
std::vector<MotzkinWord> cyclic_words(int len, int d, std::size_t cap = kWordCap);

struct ChainState {
  int n = 0, d = 0;
  double u = 1;
  std::vector<MotzkinWord> words;
  std::vector<double> logamp;
  double log_z = 0;  // log of the sum of squared amplitudes
};

ChainState chain_ground_state(int n, int d, double u);

struct ChainEntropy {
  double labels = 0;
  double svd = 0;
  std::size_t label_count = 0;
};

ChainEntropy chain_entropy(const ChainState& gs, int cut);
ChainEntropy chain_entropy(int n, int d, double u, int cut);

}  // namespace loopforge
