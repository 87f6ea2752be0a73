#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>

#include "fcpoly/error.hpp"
#include "fcpoly/simplex_ops.hpp"
#include "oracles.hpp"

using namespace fcpoly;

namespace {

OpWord W(const char* text, Bidegree source) { return OpWord(parseLetters(text), source); }

bool isCanonicalShape(const OpWord& w) {
  std::size_t k = 0;
  const auto& l = w.letters();
  for (; k < l.size() && l[k].kind == LetterKind::SimpFace; ++k) {
    if (k > 0 && l[k - 1].index >= l[k].index) return false;
  }
  const std::size_t firstCodegen = k;
  for (; k < l.size(); ++k) {
    if (l[k].kind != LetterKind::CosimpCodegen) return false;
    if (k > firstCodegen && l[k - 1].index >= l[k].index) return false;
  }
  return true;
}

Errc codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::MalformedInput;
}

}  // namespace

TEST(ApplyLetter, Examples) {
  EXPECT_EQ(applyLetter(face(0), {2, 2}), (Bidegree{2, 1}));
  EXPECT_EQ(applyLetter(codegen(1), {2, 2}), (Bidegree{1, 2}));
  EXPECT_EQ(codeOf([] { applyLetter(face(3), {2, 2}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(codeOf([] { applyLetter(codegen(2), {2, 2}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(codeOf([] { applyLetter(face(0), {2, 0}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(applyLetter(coface(3), {2, 0}), (Bidegree{3, 0}));
}

TEST(Validate, Examples) {
  EXPECT_EQ(validate(W("d_0 d_1 s^0 s^1", {2, 2})), (Bidegree{0, 0}));
  EXPECT_EQ(validate(W("", {3, 5})), (Bidegree{3, 5}));
  EXPECT_EQ(validate(W("d_0 d_1 d_2 s^0", {1, 3})), (Bidegree{0, 0}));
}

TEST(Validate, ReportsPosition) {
  try {
    validate(W("d_0 d_5 s^0", {1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndexOutOfRange);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(*e.position(), 1u);
  }
}

TEST(RewriteStep, Examples) {
  EXPECT_EQ(formatWord(rewriteStep(W("d_0 d_0", {0, 2}), 0)), "d_0 d_1");
  EXPECT_EQ(formatWord(rewriteStep(W("s^0 s^0", {2, 0}), 0)), "s^0 s^1");
  EXPECT_EQ(formatWord(rewriteStep(W("d_0 s^0", {1, 1}), 0)), "s^0 d_0");
  EXPECT_EQ(codeOf([] { rewriteStep(W("d_0", {0, 1}), 0); }), Errc::NoRuleApplies);
  EXPECT_EQ(codeOf([] { rewriteStep(W("d_0 s_0", {0, 0}), 0); }), Errc::NoRuleApplies);
}

TEST(RewriteStep, IsAnInvolution) {
  std::mt19937 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const OpWord w = oracle::randomWord(rng, 4, 4);
    for (std::size_t p = 0; p + 1 < w.size(); ++p) EXPECT_EQ(rewriteStep(rewriteStep(w, p), p), w);
  }
}

TEST(Normalize, Examples) {
  const CanonicalForm f = normalize(W("s^0 d_0 s^1 d_1", {2, 2}));
  EXPECT_EQ(f.faces, (std::vector<int>{0, 1}));
  EXPECT_EQ(f.codegens, (std::vector<int>{0, 1}));
  EXPECT_EQ(formatCanonical(f), "d_0 d_1 s^0 s^1");
  EXPECT_EQ(normalize(W("d_0 d_0", {0, 2})).faces, (std::vector<int>{0, 1}));
  const OpWord canon = W("d_0 d_1 s^0 s^1", {2, 2});
  EXPECT_EQ(normalize(canon).expand({2, 2}), canon);
  EXPECT_EQ(codeOf([] { normalize(W("d_0 s_0", {0, 0})); }), Errc::UnsupportedLetter);
  EXPECT_EQ(codeOf([] { normalize(W("d_3", {0, 2})); }), Errc::IndexOutOfRange);
}

TEST(DeltaOracle, Examples) {
  const DeltaPair a = deltaOracle(W("d_0 d_1", {0, 2}));
  EXPECT_EQ(a.simplicial.domain, 0);
  EXPECT_EQ(a.simplicial.codomain, 2);
  EXPECT_EQ(a.simplicial.values, (std::vector<int>{2}));
  EXPECT_EQ(a, deltaOracle(W("d_0 d_0", {0, 2})));
  const DeltaPair id = deltaOracle(W("", {2, 3}));
  EXPECT_EQ(id.simplicial, MonotoneMap::identity(3));
  EXPECT_EQ(id.cosimplicial, MonotoneMap::identity(2));
}

TEST(SimpNormalize, Examples) {
  EXPECT_TRUE(simpNormalize(W("d_0 s_0", {0, 1})).empty());
  EXPECT_EQ(formatWord(simpNormalize(W("d_2 s_0", {0, 1}))), "s_0 d_1");
  EXPECT_EQ(formatWord(simpNormalize(W("d_0 s_1", {0, 1}))), "s_0 d_0");
  EXPECT_EQ(codeOf([] { simpNormalize(W("d_0 s^0", {1, 1})); }), Errc::UnsupportedLetter);
}

TEST(SimpNormalize, OracleEqualAndInNormalForm) {
  std::mt19937 rng(11);
  for (int t = 0; t < 5000; ++t) {
    const OpWord w = oracle::randomSimplicialWord(rng, 4, 7);
    const OpWord n = simpNormalize(w);
    ASSERT_EQ(deltaOracle(n), deltaOracle(w)) << formatWord(w);
    const auto& l = n.letters();
    std::size_t k = 0;
    for (; k < l.size() && l[k].kind == LetterKind::SimpDegen; ++k) {
      if (k > 0) ASSERT_GT(l[k - 1].index, l[k].index) << formatWord(n);
    }
    const std::size_t firstFace = k;
    for (; k < l.size(); ++k) {
      ASSERT_EQ(l[k].kind, LetterKind::SimpFace) << formatWord(n);
      if (k > firstFace) ASSERT_LT(l[k - 1].index, l[k].index) << formatWord(n);
    }
    ASSERT_EQ(simpNormalize(n), n);
  }
}

// Distinct oracle values have distinct normal forms and vice versa.
TEST(SimpNormalize, NormalFormDeterminedByOracle) {
  std::mt19937 rng(12);
  std::map<std::pair<int, std::vector<int>>, OpWord> seen;
  for (int t = 0; t < 5000; ++t) {
    const OpWord w = oracle::randomSimplicialWord(rng, 3, 6);
    const DeltaPair d = deltaOracle(w);
    auto key = std::make_pair(w.source().simp, d.simplicial.values);
    auto [it, inserted] = seen.emplace(key, simpNormalize(w));
    if (!inserted) ASSERT_EQ(it->second, simpNormalize(w)) << formatWord(w);
  }
}

TEST(NormalizeDecoration, CosimplicialPartIsOracleEqual) {
  std::mt19937 rng(13);
  for (int t = 0; t < 3000; ++t) {
    // random coface/codegeneracy word
    int at = std::uniform_int_distribution<int>(0, 3)(rng);
    const int start = at;
    std::vector<Letter> rev;
    const int len = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < len; ++k) {
      if (at >= 1 && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        rev.push_back(codegen(std::uniform_int_distribution<int>(0, at - 1)(rng)));
        --at;
      } else {
        rev.push_back(coface(std::uniform_int_distribution<int>(0, at + 1)(rng)));
        ++at;
      }
    }
    const OpWord w(std::vector<Letter>(rev.rbegin(), rev.rend()), {start, 0});
    const OpWord n(normalizeDecoration(w.letters()), {start, 0});
    ASSERT_EQ(deltaOracle(n), deltaOracle(w)) << formatWord(w) << " -> " << formatWord(n);
  }
}

TEST(Parse, Syntax) {
  EXPECT_EQ(parseLetters("d_0 d1 s_2 s^3 D^4 d^5 S^6 s^{7} id"),
            (std::vector<Letter>{face(0), face(1), degen(2), codegen(3), coface(4), coface(5), codegen(6), codegen(7)}));
  EXPECT_EQ(formatLetters(std::vector<Letter>{}), "id");
  EXPECT_EQ(codeOf([] { parseLetters("x_0"); }), Errc::ParseError);
  EXPECT_EQ(codeOf([] { parseLetters("d_"); }), Errc::ParseError);
  EXPECT_EQ(codeOf([] { parseLetters("s0"); }), Errc::ParseError);
}

// Rewriting never changes the composite, nor the letter count per direction.
TEST(Properties, RewriteSoundness) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 10000; ++t) {
    const OpWord w = oracle::randomWord(rng, 4, 4);
    ASSERT_LE(w.size(), 8u);
    const DeltaPair d = deltaOracle(w);
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      const OpWord r = rewriteStep(w, p);
      ASSERT_EQ(deltaOracle(r), d) << formatWord(w) << " @" << p;
      ASSERT_EQ(r.countOf(LetterKind::SimpFace), w.countOf(LetterKind::SimpFace));
      ASSERT_EQ(r.countOf(LetterKind::CosimpCodegen), w.countOf(LetterKind::CosimpCodegen));
    }
    const CanonicalForm f = normalize(w);
    ASSERT_EQ(deltaOracle(f.expand(w.source())), d) << formatWord(w);
    ASSERT_EQ(normalize(f.expand(w.source())), f);
  }
}

// Exhaustive: the rewrite closure of every word of length <= 5 contains
// exactly one canonical-shape word, and it is normalize(w).
TEST(Properties, Confluence) {
  std::size_t checked = 0;
  for (int c = 0; c <= 3; ++c) {
    for (int s = 0; s <= 3; ++s) {
      for (int f = 0; f <= s; ++f) {
        for (int g = 0; g <= c && f + g <= 5; ++g) {
          for (const OpWord& w : oracle::allWords({c, s}, f, g)) {
            std::set<OpWord> seen{w};
            std::deque<OpWord> todo{w};
            while (!todo.empty()) {
              OpWord cur = todo.front();
              todo.pop_front();
              for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
                OpWord next = rewriteStep(cur, p);
                if (seen.insert(next).second) todo.push_back(std::move(next));
              }
            }
            std::vector<OpWord> canon;
            for (const auto& v : seen) {
              if (isCanonicalShape(v)) canon.push_back(v);
            }
            ASSERT_EQ(canon.size(), 1u) << formatWord(w);
            ASSERT_EQ(canon.front(), normalize(w).expand(w.source())) << formatWord(w);
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

// normalize(w1) == normalize(w2) iff the oracle pairs agree, same source.
TEST(Properties, NormalFormMatchesOracleEquality) {
  std::mt19937 rng(99);
  int equalPairs = 0;
  for (int t = 0; t < 2000; ++t) {
    const OpWord a = oracle::randomWord(rng, 4, 4);
    OpWord b = a;
    if (t % 2 == 0) {
      // a random word with the same source and counts
      auto pool = oracle::allWords(a.source(), static_cast<int>(a.countOf(LetterKind::SimpFace)),
                                   static_cast<int>(a.countOf(LetterKind::CosimpCodegen)));
      b = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    } else {
      for (int k = 0; k < 6 && b.size() >= 2; ++k) {
        b = rewriteStep(b, std::uniform_int_distribution<std::size_t>(0, b.size() - 2)(rng));
      }
    }
    const bool sameOracle = deltaOracle(a) == deltaOracle(b);
    equalPairs += sameOracle;
    ASSERT_EQ(normalize(a) == normalize(b), sameOracle) << formatWord(a) << " vs " << formatWord(b);
  }
  EXPECT_GT(equalPairs, 500);
}
