#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <set>

#include "loopforge/errors.hpp"
#include "loopforge/motzkin.hpp"

using namespace loopforge;

namespace {

// Colored Motzkin numbers by the first-return recursion.
std::vector<double> motzkin_numbers(int n, int d) {
  std::vector<double> m(n + 1, 0);
  m[0] = 1;
  for (int k = 1; k <= n; ++k) {
    m[k] = m[k - 1];
    for (int j = 0; j <= k - 2; ++j) m[k] += d * m[j] * m[k - 2 - j];
  }
  return m;
}

std::vector<std::string> words(int n, int d, Sector s) {
  std::vector<std::string> out;
  for (const auto& w : enumerate_words(n, d, s)) out.push_back(to_string(w));
  return out;
}

// Exhaustive rotation check: some rotation is balanced.
bool some_rotation_balanced(const MotzkinWord& w) {
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (is_balanced(rotate(w, static_cast<int>(r)))) return true;
  }
  return false;
}

// Direct SVD oracle for a chain cut.
double svd_entropy(int n, int d, double u, int cut) {
  std::map<std::vector<Symbol>, int> rows, cols;
  std::vector<std::tuple<int, int, double>> entries;
  for (const auto& w : enumerate_words(n, d, Sector::Balanced)) {
    std::vector<Symbol> l(w.symbols.begin(), w.symbols.begin() + cut), r(w.symbols.begin() + cut, w.symbols.end());
    const int i = rows.emplace(l, rows.size()).first->second;
    const int j = cols.emplace(r, cols.size()).first->second;
    entries.emplace_back(i, j, std::pow(u, static_cast<double>(area(w))));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  for (auto [i, j, a] : entries) m(i, j) = a;
  m /= m.norm();
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  double h = 0;
  for (int k = 0; k < s.size(); ++k) {
    const double p = s[k] * s[k];
    if (p > 1e-300) h -= p * std::log(p);
  }
  return h;
}

}  // namespace

TEST(Words, SmallBalancedSets) {
  EXPECT_EQ(words(1, 1, Sector::Balanced), std::vector<std::string>({"0"}));
  const auto two = words(2, 1, Sector::Balanced);
  EXPECT_EQ(std::set<std::string>(two.begin(), two.end()), std::set<std::string>({"00", "()"}));
}

TEST(Words, CountsMatchRecursion) {
  for (int d = 1; d <= 3; ++d) {
    const auto m = motzkin_numbers(10, d);
    for (int n = 1; n <= 10; ++n) {
      EXPECT_EQ(static_cast<double>(enumerate_words(n, d, Sector::Balanced).size()), m[n]) << n << " " << d;
    }
  }
}

TEST(Words, AllSectorCount) {
  EXPECT_EQ(enumerate_words(4, 2, Sector::All).size(), 625u);
  EXPECT_THROW(enumerate_words(12, 2, Sector::All, 1000), CapacityError);
}

TEST(Words, ParseRoundTrip) {
  for (const auto& w : enumerate_words(5, 2, Sector::All)) EXPECT_EQ(parse_word(to_string(w)), w);
  EXPECT_THROW(parse_word("(x"), ParseError);
}

TEST(Stack, HeightsAndArea) {
  const StackProfile a = stack_profile(parse_word("()"));
  EXPECT_EQ(a.heights, std::vector<int>({1, 0}));
  EXPECT_EQ(a.area, 1);
  const StackProfile b = stack_profile(parse_word("(())"));
  EXPECT_EQ(b.heights, std::vector<int>({1, 2, 1, 0}));
  EXPECT_EQ(b.area, 4);
  EXPECT_THROW(stack_profile(parse_word("(1)2")), MatchError);
}

TEST(Matching, Crossings) {
  EXPECT_EQ(crossings(parse_word("()"), 1), 1);
  EXPECT_EQ(crossings(parse_word("()()"), 2), 0);
  EXPECT_EQ(crossings(parse_word("(())"), 2), 2);
  const auto lines = matching_lines(parse_word("(1(2)2)1"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].open_index, 0);
  EXPECT_EQ(lines[0].close_index, 3);
  EXPECT_EQ(lines[1].color, 1);
}

TEST(Cyclic, Examples) {
  const CyclicBalance a = cyclic_balanced(parse_word(")("));
  EXPECT_TRUE(a.balanced);
  EXPECT_EQ(a.origin, 1);
  EXPECT_FALSE(cyclic_balanced(parse_word("((")).balanced);
  const MotzkinWord w = parse_word("0)(0");
  EXPECT_EQ(cyclic_balanced(w).balanced, some_rotation_balanced(w));
}

TEST(Cyclic, AgreesWithExhaustiveRotation) {
  for (int len = 1; len <= 6; ++len) {
    for (const auto& w : enumerate_words(len, 2, Sector::All)) {
      const CyclicBalance cb = cyclic_balanced(w);
      ASSERT_EQ(cb.balanced, some_rotation_balanced(w)) << to_string(w);
      if (cb.balanced) {
        EXPECT_TRUE(is_balanced(rotate(w, cb.origin)));
      }
    }
  }
}

TEST(Cyclic, WordCounts) {
  for (auto [len, d] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{8, 2}}) {
    std::size_t expect = 0;
    for (const auto& w : enumerate_words(len, d, Sector::All)) expect += some_rotation_balanced(w);
    EXPECT_EQ(cyclic_words(len, d).size(), expect);
  }
  EXPECT_EQ(cyclic_words(4, 1).size(), 19u);
  EXPECT_EQ(cyclic_words(4, 2).size(), 49u);
  EXPECT_EQ(cyclic_words(8, 2).size(), 7393u);
}

TEST(Cyclic, AreaIsOriginIndependent) {
  for (const auto& w : cyclic_words(6, 2)) {
    for (int r = 0; r < 6; ++r) EXPECT_EQ(cyclic_area(rotate(w, r)), cyclic_area(w));
  }
}

TEST(Chain, SmallAmplitudes) {
  const ChainState a = chain_ground_state(2, 1, 1.0);
  ASSERT_EQ(a.words.size(), 2u);
  EXPECT_DOUBLE_EQ(a.logamp[0], a.logamp[1]);
  const ChainState b = chain_ground_state(2, 1, 2.0);
  std::map<std::string, double> amp;
  for (std::size_t i = 0; i < b.words.size(); ++i) amp[to_string(b.words[i])] = std::exp(b.logamp[i]);
  EXPECT_NEAR(amp["()"] / amp["00"], 2.0, 1e-15);
  EXPECT_THROW(chain_ground_state(4, 1, 0.0), ModelError);
}

TEST(Chain, NormalizationMatchesDirectSum) {
  const ChainState gs = chain_ground_state(6, 2, 1.5);
  double z = 0;
  for (const auto& w : enumerate_words(6, 2, Sector::Balanced)) z += std::pow(1.5, 2.0 * area(w));
  EXPECT_NEAR(gs.log_z, std::log(z), 1e-12);
}

TEST(Chain, SmallEntropies) {
  EXPECT_NEAR(chain_entropy(2, 1, 1.0, 1).labels, std::log(2.0), 1e-12);
  EXPECT_NEAR(chain_entropy(2, 2, 1.0, 1).labels, std::log(3.0), 1e-12);
  EXPECT_THROW(chain_entropy(4, 1, 1.0, 0), ModelError);
}

TEST(Chain, LabelsMatchIndependentSvd) {
  for (int n : {4, 7, 10}) {
    for (int d : {1, 2}) {
      for (double u : {0.5, 1.5}) {
        for (int cut = 1; cut < n; ++cut) {
          const ChainEntropy ce = chain_entropy(n, d, u, cut);
          const double oracle = svd_entropy(n, d, u, cut);
          EXPECT_NEAR(ce.svd, oracle, 1e-10);
          EXPECT_NEAR(ce.labels, oracle, 1e-9);
        }
      }
    }
  }
  const ChainEntropy big = chain_entropy(12, 2, 1.5, 6);
  EXPECT_NEAR(big.labels, big.svd, 1e-9);
}
