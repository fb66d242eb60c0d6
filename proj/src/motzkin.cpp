#include "loopforge/motzkin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "loopforge/errors.hpp"
#include "loopforge/linalg.hpp"

namespace loopforge {

std::string to_string(const MotzkinWord& w) {
  bool digits = false;
  for (Symbol s : w.symbols) digits |= (s != 0 && symbol_color(s) > 0);
  std::string out;
  for (Symbol s : w.symbols) {
    if (s == 0) {
      out += '0';
      continue;
    }
    out += is_open(s) ? '(' : ')';
    if (digits) out += static_cast<char>('1' + symbol_color(s));
  }
  return out;
}

MotzkinWord parse_word(const std::string& text) {
  MotzkinWord w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ' ') continue;
    if (ch == '0') {
      w.symbols.push_back(0);
      continue;
    }
    if (ch != '(' && ch != ')') throw ParseError(std::string("bad Motzkin symbol '") + ch + "'");
    int color = 0;
    if (i + 1 < text.size() && text[i + 1] >= '1' && text[i + 1] <= '9') {
      color = text[i + 1] - '1';
      ++i;
    }
    w.symbols.push_back(ch == '(' ? open_symbol(color) : close_symbol(color));
  }
  return w;
}

std::vector<MotzkinWord> enumerate_words(int n, int d, Sector sector, std::size_t cap) {
  if (n < 0 || d < 1) throw ModelError("enumerate_words needs n >= 0 and d >= 1");
  std::vector<MotzkinWord> out;
  MotzkinWord cur;
  cur.symbols.resize(n);
  std::vector<int> stack;
  const int alphabet = 2 * d + 1;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (sector == Sector::Balanced && !stack.empty()) return;
      if (out.size() >= cap) throw CapacityError("word enumeration exceeded capacity", cap);
      out.push_back(cur);
      return;
    }
    for (int s = 0; s < alphabet; ++s) {
      const Symbol sym = static_cast<Symbol>(s);
      if (sector == Sector::All) {
        cur.symbols[i] = sym;
        self(self, i + 1);
        continue;
      }
      if (sym == 0) {
        if (sector == Sector::Balanced && static_cast<int>(stack.size()) > n - i - 1) continue;
        cur.symbols[i] = sym;
        self(self, i + 1);
      } else if (is_open(sym)) {
        if (sector == Sector::Balanced && static_cast<int>(stack.size()) + 1 > n - i - 1) continue;
        stack.push_back(symbol_color(sym));
        cur.symbols[i] = sym;
        self(self, i + 1);
        stack.pop_back();
      } else {
        if (stack.empty() || stack.back() != symbol_color(sym)) continue;
        const int top = stack.back();
        stack.pop_back();
        cur.symbols[i] = sym;
        self(self, i + 1);
        stack.push_back(top);
      }
    }
  };
  rec(rec, 0);
  return out;
}

StackProfile stack_profile(const MotzkinWord& w) {
  StackProfile p;
  std::string stack;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Symbol s = w.symbols[i];
    if (is_open(s)) {
      stack += static_cast<char>('0' + symbol_color(s));
    } else if (is_close(s)) {
      if (stack.empty()) throw MatchError("unmatched close at position " + std::to_string(i));
      if (stack.back() != static_cast<char>('0' + symbol_color(s))) {
        throw MatchError("color mismatch at position " + std::to_string(i));
      }
      stack.pop_back();
    }
    p.theta.push_back(stack);
    p.heights.push_back(static_cast<int>(stack.size()));
    p.area += static_cast<long>(stack.size());
  }
  return p;
}

bool is_balanced(const MotzkinWord& w) {
  try {
    const StackProfile p = stack_profile(w);
    return p.theta.empty() || p.theta.back().empty();
  } catch (const MatchError&) {
    return false;
  }
}

long area(const MotzkinWord& w) { return stack_profile(w).area; }

std::vector<MatchingLine> matching_lines(const MotzkinWord& w) {
  std::vector<MatchingLine> out;
  std::vector<int> stack;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    const Symbol s = w.symbols[i];
    if (is_open(s)) {
      stack.push_back(i);
    } else if (is_close(s)) {
      if (stack.empty() || w.symbols[stack.back()] != open_symbol(symbol_color(s))) {
        throw MatchError("word is not balanced at position " + std::to_string(i));
      }
      out.push_back({stack.back(), i, symbol_color(s)});
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw MatchError("word has unmatched opens");
  std::sort(out.begin(), out.end(), [](const MatchingLine& a, const MatchingLine& b) { return a.open_index < b.open_index; });
  return out;
}

int crossings(const MotzkinWord& w, int cut) {
  int k = 0;
  for (const auto& m : matching_lines(w)) k += (m.open_index < cut && cut <= m.close_index);
  return k;
}

MotzkinWord rotate(const MotzkinWord& w, int r) {
  MotzkinWord out;
  const int n = static_cast<int>(w.size());
  out.symbols.resize(n);
  for (int i = 0; i < n; ++i) out.symbols[i] = w.symbols[(i + r) % n];
  return out;
}

CyclicBalance cyclic_balanced(const MotzkinWord& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {true, 0};
  for (int r = 0; r < n; ++r) {
    if (is_balanced(rotate(w, r))) return {true, r};
  }
  return {false, -1};
}

long cyclic_area(const MotzkinWord& w) {
  const CyclicBalance cb = cyclic_balanced(w);
  if (!cb.balanced) throw MatchError("word is not cyclically balanced");
  return area(rotate(w, cb.origin));
}

std::vector<int> cyclic_heights(const MotzkinWord& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> h(n);
  int cur = 0;
  for (int i = 0; i < n; ++i) {
    const Symbol s = w.symbols[i];
    cur += is_open(s) ? 1 : (is_close(s) ? -1 : 0);
    h[i] = cur;
  }
  if (n > 0) {
    const int m = *std::min_element(h.begin(), h.end());
    for (int& x : h) x -= m;
  }
  return h;
}

MotzkinWord reverse_flip(const MotzkinWord& w) {
  MotzkinWord out;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    const Symbol s = *it;
    out.symbols.push_back(s == 0 ? s : (is_open(s) ? close_symbol(symbol_color(s)) : open_symbol(symbol_color(s))));
  }
  return out;
}

std::vector<MotzkinWord> cyclic_words(int len, int d, std::size_t cap) {
  std::set<MotzkinWord> seen;
  for (const MotzkinWord& w : enumerate_words(len, d, Sector::Balanced, cap)) {
    for (int r = 0; r < len; ++r) {
      seen.insert(rotate(w, r));
      if (seen.size() > cap) throw CapacityError("cyclic word enumeration exceeded capacity", cap);
    }
  }
  if (len == 0) seen.insert(MotzkinWord{});
  return {seen.begin(), seen.end()};
}

ChainState chain_ground_state(int n, int d, double u) {
  if (!(u > 0)) throw ModelError("u must be positive");
  ChainState gs;
  gs.n = n;
  gs.d = d;
  gs.u = u;
  gs.words = enumerate_words(n, d, Sector::Balanced);
  const double lu = std::log(u);
  std::vector<double> two;
  for (const MotzkinWord& w : gs.words) {
    gs.logamp.push_back(static_cast<double>(area(w)) * lu);
    two.push_back(2 * gs.logamp.back());
  }
  gs.log_z = log_sum_exp(two);
  return gs;
}

ChainEntropy chain_entropy(const ChainState& gs, int cut) {
  if (cut <= 0 || cut >= gs.n) throw ModelError("cut must satisfy 0 < cut < n");
  ChainEntropy out;
  std::map<std::string, double> groups;
  std::map<std::vector<Symbol>, int> lefts, rights;
  std::vector<AmplitudeEntry> entries;
  const double shift = *std::max_element(gs.logamp.begin(), gs.logamp.end());
  for (std::size_t i = 0; i < gs.words.size(); ++i) {
    const MotzkinWord& w = gs.words[i];
    const StackProfile p = stack_profile(w);
    groups[p.theta[cut - 1]] += std::exp(2 * gs.logamp[i] - gs.log_z);
    std::vector<Symbol> l(w.symbols.begin(), w.symbols.begin() + cut);
    std::vector<Symbol> r(w.symbols.begin() + cut, w.symbols.end());
    const int li = lefts.emplace(l, static_cast<int>(lefts.size())).first->second;
    const int ri = rights.emplace(r, static_cast<int>(rights.size())).first->second;
    entries.push_back({li, ri, std::exp(gs.logamp[i] - shift)});
  }
  std::vector<double> probs;
  for (const auto& [k, p] : groups) probs.push_back(p);
  out.labels = entropy_of(probs);
  out.label_count = groups.size();
  out.svd = entropy_of(schmidt_spectrum(entries, static_cast<int>(lefts.size()), static_cast<int>(rights.size())).weights);
  return out;
}

ChainEntropy chain_entropy(int n, int d, double u, int cut) { return chain_entropy(chain_ground_state(n, d, u), cut); }

}  // namespace loopforge
