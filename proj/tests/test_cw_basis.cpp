#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "fcpoly/cw_basis.hpp"
#include "fcpoly/error.hpp"
#include "oracles.hpp"

using namespace fcpoly;

namespace {

std::multiset<std::pair<int, std::string>> inventory(const GradedSetSpec& s) {
  std::multiset<std::pair<int, std::string>> out;
  for (const auto& [deg, c] : s.counts) {
    for (const auto& name : s.namesIn(deg)) out.insert({deg, name});
  }
  return out;
}

FormalGroupWord gen(const std::string& name, int level) { return FormalGroupWord::generator(name, level); }

FormalGroupWord face(const FormalGroupWord& w, int i, const FaceImages& images = {}) {
  const Letter d = fcpoly::face(i);
  return applyOps({&d, 1}, w, images);
}

}  // namespace

TEST(MultiIndex, Examples) {
  ASSERT_EQ(enumerateMultiIndices(0, 4).size(), 1u);
  EXPECT_TRUE(enumerateMultiIndices(0, 4)[0].entries.empty());
  EXPECT_EQ(enumerateMultiIndices(0, 4)[0].tag(), "");
  std::vector<std::vector<int>> e;
  for (const auto& I : enumerateMultiIndices(2, 3)) e.push_back(I.entries);
  EXPECT_EQ(e, (std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}));
  ASSERT_EQ(enumerateMultiIndices(3, 3).size(), 1u);
  EXPECT_EQ(enumerateMultiIndices(3, 3)[0].entries, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(enumerateMultiIndices(4, 3).empty());
  EXPECT_EQ(MultiIndex({0, 2}, 3).tag(), "s_(0,2)");
  EXPECT_EQ(formatLetters(MultiIndex({0, 2}, 3).degeneracies()), "s_2 s_0");
}

TEST(MultiIndex, PowerSetCount) {
  for (int n = 0; n <= 12; ++n) {
    std::size_t total = 0;
    for (int lambda = 0; lambda <= n; ++lambda) {
      const auto I = enumerateMultiIndices(lambda, n);
      EXPECT_EQ(I.size(), binomial(n, lambda));
      total += I.size();
      for (const auto& x : I) {
        EXPECT_TRUE(std::is_sorted(x.entries.begin(), x.entries.end()));
        EXPECT_EQ(std::adjacent_find(x.entries.begin(), x.entries.end()), x.entries.end());
        if (!x.entries.empty()) EXPECT_LT(x.entries.back(), n);
        // s_I carries level n - lambda to level n.
        EXPECT_EQ(validate(OpWord(x.degeneracies(), {0, n - lambda})).simp, n);
      }
    }
    EXPECT_EQ(total, std::size_t{1} << n);
  }
}

TEST(CWDecompose, Examples) {
  CWBasisSpec only0;
  only0.perLevel.resize(1);
  only0.perLevel[0].counts[7] = 1;
  for (int n = 0; n <= 5; ++n) {
    const auto r = cwDecompose(n, only0);
    EXPECT_EQ(r.total(), 1u);
    std::string expect = "iota7";
    if (n > 0) {
      std::string idx;
      for (int k = 0; k < n; ++k) idx += (k ? "," : "") + std::to_string(k);
      expect = "s_(" + idx + ")<iota7>";
    }
    EXPECT_EQ(r.namesIn(7), std::vector<std::string>{expect});
  }
  CWBasisSpec two;
  two.perLevel.resize(2);
  two.perLevel[0].counts[7] = 1;
  two.perLevel[1].counts[7] = 1;
  EXPECT_EQ(cwDecompose(2, two).count(7), 3u);
  EXPECT_TRUE(cwDecompose(4, CWBasisSpec{}).empty());
}

TEST(CWDecompose, MatchesClosureOnRandomSpecs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<std::pair<int, std::string>>> levels(4);
    CWBasisSpec spec;
    spec.perLevel.resize(4);
    for (int m = 0; m < 4; ++m) {
      const int c = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int k = 0; k < c; ++k) {
        const int deg = std::uniform_int_distribution<int>(1, 9)(rng);
        const std::string name = "g" + std::to_string(m) + "_" + std::to_string(k);
        levels[static_cast<std::size_t>(m)].push_back({deg, name});
        spec.perLevel[static_cast<std::size_t>(m)].add(deg, name);
      }
    }
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(inventory(cwDecompose(n, spec)), oracle::closureInventory(n, levels)) << trial << " " << n;
  }
}

TEST(CWDecompose, Linear) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    CWBasisSpec a, b, ab;
    for (auto* s : {&a, &b}) {
      s->perLevel.resize(3);
      for (auto& lvl : s->perLevel) {
        const int c = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < c; ++k) lvl.counts[std::uniform_int_distribution<int>(1, 6)(rng)] += 1;
      }
    }
    for (int m = 0; m < 3; ++m) ab.perLevel.push_back(merge(a.level(m), b.level(m)));
    for (int n = 0; n <= 4; ++n) {
      const auto lhs = cwDecompose(n, ab);
      const auto rhs = merge(cwDecompose(n, a), cwDecompose(n, b));
      for (int deg = 1; deg <= 6; ++deg) EXPECT_EQ(lhs.count(deg), rhs.count(deg));
      EXPECT_EQ(lhs.total(), rhs.total());
    }
  }
}

TEST(CrossTerms, S7Spec) {
  CrossTermSpec spec;
  spec.perBidegree[{1, 1}].counts[13] = 1;
  spec.perBidegree[{2, 2}].counts[19] = 1;
  const auto e21 = crossTermLevel(2, 1, spec);
  EXPECT_EQ(e21.count(13), 2u);
  EXPECT_EQ(e21.total(), 2u);
  EXPECT_EQ(e21.namesIn(13), (std::vector<std::string>{"s_(0)<iota13>", "s_(1)<iota13>"}));
  EXPECT_EQ(crossTermLevel(2, 2, spec).count(19), 1u);
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(crossTermLevel(n, 0, spec).empty());
  for (int r = 0; r <= 4; ++r) EXPECT_TRUE(crossTermLevel(0, r, spec).empty());
  // Entries at n = 0 or r = 0 are forced to vanish.
  spec.perBidegree[{0, 3}].counts[5] = 1;
  spec.perBidegree[{3, 0}].counts[5] = 1;
  EXPECT_TRUE(crossTermLevel(0, 3, spec).empty());
  EXPECT_TRUE(crossTermLevel(3, 0, spec).empty());
}

TEST(CrossTerms, SingleSupport) {
  for (int n0 = 1; n0 <= 3; ++n0) {
    for (int r0 = 1; r0 <= 3; ++r0) {
      CrossTermSpec spec;
      spec.perBidegree[{n0, r0}].counts[4] = 2;
      for (int n = 0; n <= 5; ++n) {
        for (int r = 0; r <= 4; ++r) {
          const auto e = crossTermLevel(n, r, spec);
          if (r == r0 && n >= n0) {
            EXPECT_EQ(e.count(4), 2 * binomial(n, n - n0));
          } else {
            EXPECT_TRUE(e.empty()) << n << "," << r;
          }
        }
      }
    }
  }
}

TEST(Latching, Copies) {
  EXPECT_EQ(latchingCopies(0).copies, 0);
  EXPECT_TRUE(latchingCopies(0).identifications.empty());
  EXPECT_EQ(latchingCopies(1).copies, 1);
  EXPECT_TRUE(latchingCopies(1).identifications.empty());
  EXPECT_EQ(latchingCopies(2).copies, 2);
  EXPECT_EQ(latchingCopies(2).identifications, (std::vector<std::pair<int, int>>{{0, 0}}));
  EXPECT_EQ(latchingCopies(3).identifications, (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}}));
  for (int n = 1; n <= 6; ++n) {
    for (auto [i, j] : latchingCopies(n).identifications) {
      EXPECT_LE(i, j);
      EXPECT_LT(j + 1, n);  // copy j+1 exists and s_j is defined on X_{n-2}
    }
  }
}

TEST(BasisFile, Load) {
  const auto f = loadBasisJson(R"({"cw": {"0": {"7": 1}}, "cross": {"1,1": {"13": 1}, "2,2": {"19": ["w"]}}})");
  EXPECT_EQ(f.cw.level(0).count(7), 1u);
  EXPECT_TRUE(f.cw.level(1).empty());
  EXPECT_EQ(f.cross.at(1, 1).count(13), 1u);
  EXPECT_EQ(f.cross.at(2, 2).namesIn(19), std::vector<std::string>{"w"});
  auto code = [](const std::string& text) {
    try {
      loadBasisJson(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::NoRuleApplies;
  };
  EXPECT_EQ(code("{"), Errc::ParseError);
  EXPECT_EQ(code(R"({"cross": {"0,1": {"5": 1}}})"), Errc::MalformedInput);
  EXPECT_EQ(code(R"({"cross": {"1,0": {"5": 1}}})"), Errc::MalformedInput);
  EXPECT_EQ(code(R"({"cross": {"a": {"5": 1}}})"), Errc::MalformedInput);
  EXPECT_EQ(code(R"({"cw": {"x": {"5": 1}}})"), Errc::MalformedInput);
}

TEST(GroupWord, FreeReduction) {
  const auto a = gen("a", 2);
  const auto b = gen("b", 2);
  EXPECT_TRUE((a * a.inverse()).isIdentity());
  EXPECT_EQ((a * b * b.inverse() * a).str(), "(a) * (a)");
  EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
  EXPECT_EQ(FormalGroupWord().str(), "e");
  // Faces act homomorphically and respect the simplicial identities.
  EXPECT_EQ(face(face(a, 1), 0), face(face(a, 0), 0));
  EXPECT_EQ(face(a * b, 1), face(a, 1) * face(b, 1));
}

TEST(Matching, Compatible) {
  const auto y = gen("y", 3);
  for (int k = 0; k <= 3; ++k) {
    MatchingTuple t{k, 3, {}};
    for (int j = k; j <= 3; ++j) t.components.push_back(face(y, j));
    EXPECT_TRUE(checkMatchingTuple(t));
  }
  MatchingTuple ids{0, 2, {FormalGroupWord(), FormalGroupWord(), FormalGroupWord()}};
  EXPECT_TRUE(checkMatchingTuple(ids));
}

TEST(Matching, Incompatible) {
  const auto y = gen("y", 3);
  MatchingTuple t{0, 3, {face(y, 0), face(y, 1), face(y, 3), face(y, 2)}};
  EXPECT_FALSE(checkMatchingTuple(t));
  MatchingTuple u{1, 2, {gen("u", 1), gen("v", 1)}};
  EXPECT_FALSE(checkMatchingTuple(u));
}

TEST(Matching, Malformed) {
  MatchingTuple wrongLevel{0, 2, {gen("a", 2), gen("b", 1), gen("c", 1)}};
  EXPECT_THROW(checkMatchingTuple(wrongLevel), Error);
  MatchingTuple wrongCount{0, 2, {gen("a", 1)}};
  EXPECT_THROW(checkMatchingTuple(wrongCount), Error);
}

TEST(Tau, GenericLevels) {
  for (int n = 1; n <= 4; ++n) {
    const auto t = tauNormalize("tau", n);
    EXPECT_FALSE(t.isIdentity());
    EXPECT_TRUE(isChain(t, n)) << t.str();
    EXPECT_FALSE(face(t, 0).isIdentity());
  }
  EXPECT_EQ(tauNormalize("tau", 1).str(), "(tau) * (s_0 d_1 tau)^-1");
}

TEST(Tau, WithFaceImages) {
  FaceImages images{{{"tau", 1}, gen("w", 0)}};
  const auto t = tauNormalize("tau", 1, images);
  EXPECT_EQ(t.str(), "(tau) * (s_0 w)^-1");
  EXPECT_TRUE(isChain(t, 1, images));

  // Already a chain: every correction factor is trivial.
  FaceImages trivial;
  for (int i = 1; i <= 3; ++i) trivial[{"tau", i}] = FormalGroupWord();
  EXPECT_EQ(tauNormalize("tau", 3, trivial), gen("tau", 3));

  // Consistent images at level 2: d_1 tau = d_1 y, d_2 tau = d_2 y.
  FaceImages viaY{{{"tau", 1}, face(gen("y", 2), 1)}, {{"tau", 2}, face(gen("y", 2), 2)}};
  EXPECT_TRUE(isChain(tauNormalize("tau", 2, viaY), 2, viaY));
}

TEST(Tau, Errors) {
  EXPECT_THROW(tauNormalize("tau", 0), Error);
  // Images violating d_1 d_2 = d_1 d_1 cannot be certified.
  FaceImages unrelated{{{"tau", 1}, gen("a", 1)}, {{"tau", 2}, gen("b", 1)}};
  try {
    tauNormalize("tau", 2, unrelated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonReducible);
  }
  FaceImages bad{{{"tau", 1}, gen("w", 2)}};
  try {
    tauNormalize("tau", 1, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedInput);
  }
  // d_1 x = d_0 x and d_0 x = d_1 x: substitution goes round in a circle.
  FaceImages loop{{{"x", 1}, face(gen("x", 2), 0)}, {{"x", 0}, face(gen("x", 2), 1)}};
  try {
    applyOps(std::vector<Letter>{fcpoly::face(1)}, gen("x", 2), loop);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonReducible);
  }
}
