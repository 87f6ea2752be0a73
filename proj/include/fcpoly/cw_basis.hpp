#pragma once

// Index calculus for CW bases of simplicial objects.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fcpoly/simplex_ops.hpp"

namespace fcpoly {

// I = (i_1 < ... < i_lambda) with entries in [0, level-1]; s_I = s_{i_lambda} ... s_{i_1}.
struct MultiIndex {
  std::vector<int> entries;
  int level = 0;

  int lambda() const { return static_cast<int>(entries.size()); }
  // The degeneracy word s_I, leftmost letter applied last.
  std::vector<Letter> degeneracies() const;
  std::string tag() const;  // "s_(0,2)"; empty for the empty index

  auto operator<=>(const MultiIndex&) const = default;
};

// Lexicographic order; C(n, lambda) entries.
std::vector<MultiIndex> enumerateMultiIndices(int lambda, int n);

std::size_t binomial(int n, int k);

// Generators per homotopy degree, with optional names.
struct GradedSetSpec {
  std::map<int, std::size_t> counts;
  std::map<int, std::vector<std::string>> names;

  std::size_t count(int degree) const;
  std::size_t total() const;
  bool empty() const { return total() == 0; }
  // Supplied names, padded with "iota<k>" / "iota<k>.<j>".
  std::vector<std::string> namesIn(int degree) const;
  void add(int degree, std::string name);

  bool operator==(const GradedSetSpec& o) const { return counts == o.counts && names == o.names; }
};

GradedSetSpec merge(const GradedSetSpec& a, const GradedSetSpec& b);

struct CWBasisSpec {
  std::vector<GradedSetSpec> perLevel;  // R-bar_n

  const GradedSetSpec& level(int n) const;
};

// C-bar^n_r; zero whenever n == 0 or r == 0.
struct CrossTermSpec {
  std::map<std::pair<int, int>, GradedSetSpec> perBidegree;

  const GradedSetSpec& at(int n, int r) const;
};

// R_n = coproduct over lambda and I in I_{lambda,n} of s_I R-bar_{n-lambda}.
GradedSetSpec cwDecompose(int n, const CWBasisSpec& basis);

// E-bar^n_r = coproduct over lambda and I of [C-bar^{n-lambda}_r]_I.
GradedSetSpec crossTermLevel(int n, int r, const CrossTermSpec& spec);

// L_n X = coproduct of n copies of X_{n-1}, with s_j x in copy i identified
// with s_i x in copy j+1 for i <= j.
struct LatchingStructure {
  int copies = 0;
  std::vector<std::pair<int, int>> identifications;  // (i, j)
};

LatchingStructure latchingCopies(int n);

// {"cw": {"0": {"7": 1}}, "cross": {"1,1": {"13": 1}}}; a degree may map
// to a count or to a list of names.
struct BasisFile {
  CWBasisSpec cw;
  CrossTermSpec cross;
};

BasisFile loadBasisJson(const std::string& text);

// Formal group words in a free simplicial group: products of atoms
// (normalized degeneracy/face prefix applied to a generator)^{+-1}.
struct FormalFactor {
  int sign = 1;
  OpWord prefix;  // simplicial letters only; source (0, generator level)
  std::string generator;

  int level() const { return validate(prefix).simp; }
  auto operator<=>(const FormalFactor&) const = default;
};

class FormalGroupWord {
 public:
  FormalGroupWord() = default;
  explicit FormalGroupWord(std::vector<FormalFactor> factors);

  static FormalGroupWord generator(const std::string& name, int level);

  const std::vector<FormalFactor>& factors() const { return factors_; }
  bool isIdentity() const { return factors_.empty(); }

  FormalGroupWord inverse() const;
  FormalGroupWord operator*(const FormalGroupWord& rhs) const;

  std::string str() const;

  bool operator==(const FormalGroupWord&) const = default;

 private:
  void reduce();
  std::vector<FormalFactor> factors_;
};

// Formal values of d_i on a generator, keyed by (generator, i).
using FaceImages = std::map<std::pair<std::string, int>, FormalGroupWord>;

// Applies a simplicial operator homomorphically. Each atom is simpNormalized;
// when its rightmost letter is a face with a supplied image, that image is
// substituted and the rest of the prefix is applied to it.
FormalGroupWord applyOps(std::span<const Letter> ops, const FormalGroupWord& w, const FaceImages& images = {});

bool isChain(const FormalGroupWord& w, int level, const FaceImages& images = {});  // d_i w = e, i >= 1
bool isCycle(const FormalGroupWord& w, int level, const FaceImages& images = {});  // d_i w = e, i >= 0

struct MatchingTuple {
  int k = 0;
  int n = 0;
  std::vector<FormalGroupWord> components;  // x_k, ..., x_n at level n-1
};

bool checkMatchingTuple(const MatchingTuple& t, const FaceImages& images = {});

// tau_0 = tau, tau_{i+1} = tau_i * (s_{n-i-1} d_{n-i} tau_i)^{-1}; returns
// tau_n after verifying d_i tau_n = e for 1 <= i <= n (NonReducible otherwise).
FormalGroupWord tauNormalize(const std::string& tau, int n, const FaceImages& images = {});

}  // namespace fcpoly
