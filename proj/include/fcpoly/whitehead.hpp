#pragma once

// Formal Whitehead-bracket expressions over operator-decorated generators.
//
// Conventions: |[a,b]| = |a| + |b| - 1, [a,b] = (-1)^{|a||b|} [b,a]. The
// normal form orders the two sides of every bracket by their serialized
// text and drops self-brackets [a,a] with |a| odd (rationally zero).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcpoly/cw_basis.hpp"
#include "fcpoly/factorization.hpp"
#include "fcpoly/simplex_ops.hpp"

namespace fcpoly {

struct Generator {
  std::string name;
  int degree = 1;
  int copy = 0;                     // cosimplicial factor of X^{n+1}
  std::vector<Letter> decoration;   // leftmost applied last
  bool crossTerm = false;           // lives in some C-bar^n_r

  std::string str() const;
  auto operator<=>(const Generator&) const = default;
};

class BracketTree {
 public:
  static BracketTree leaf(Generator g);
  static BracketTree bracket(BracketTree a, BracketTree b);

  bool isLeaf() const;
  const Generator& generator() const;
  const BracketTree& left() const;
  const BracketTree& right() const;
  int degree() const;
  int leafCount() const;

  std::string str() const;         // "[D^0 iota13, s_0 D^2 D^1 iota7]"
  const std::string& key() const;  // injective serialization, used for ordering
  bool operator==(const BracketTree& o) const { return key() == o.key(); }

 private:
  struct Node;
  explicit BracketTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term {
  long coeff = 1;
  BracketTree tree;
};

class BracketExpr {
 public:
  BracketExpr() = default;
  explicit BracketExpr(std::vector<Term> terms);
  static BracketExpr of(Generator g, long coeff = 1);
  static BracketExpr of(BracketTree t, long coeff = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isHomogeneous() const;
  std::optional<int> degree() const;  // nullopt for 0; throws if inhomogeneous

  BracketExpr operator+(const BracketExpr& o) const;
  BracketExpr operator-(const BracketExpr& o) const;
  BracketExpr operator*(long k) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

// Bilinear; InhomogeneousOperand for mixed-degree operands.
BracketExpr bracket(const BracketExpr& a, const BracketExpr& b);

// Canonical leaf order, like terms merged, zero coefficients dropped.
BracketExpr normalizeExpr(const BracketExpr& e);

bool equivalent(const BracketExpr& a, const BracketExpr& b);

// Morphism determined on generators; leaves without an image are kept.
// A nonzero image of different degree raises DegreeMismatch.
using GeneratorImage = std::function<std::optional<BracketExpr>(const Generator&)>;
BracketExpr applyMorphism(const BracketExpr& e, const GeneratorImage& image);
BracketExpr applyMorphism(const BracketExpr& e, const std::map<Generator, BracketExpr>& images);

// (-1)^{pr} [[x,y],z] + (-1)^{pq} [[y,z],x] + (-1)^{qr} [[z,x],y].
BracketExpr jacobiCombination(const BracketTree& x, const BracketTree& y, const BracketTree& z);

// True when e is, up to normal form, a nonzero multiple of a Jacobi
// combination of the three second-level subtrees of its first term.
bool isJacobiInstance(const BracketExpr& e);

// Pushes e forward along the codegeneracy s^j: each decoration is
// renormalized, and a codegeneracy left acting directly on a cross-term
// generator sends that leaf to 0.
BracketExpr codegeneracyPushforward(const BracketExpr& e, int j);

struct CrossTerm {
  Generator generator;
  BracketExpr attaching;  // image of d-bar_0
};

// One generator of degree p+q-1 per pair (x in copy 0, y in copy 1).
std::vector<CrossTerm> crossTermC21(const GradedSetSpec& basis0, const GradedSetSpec& basis1);

struct ReportCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct S7Report {
  Generator iota7;
  CrossTerm c11;
  CrossTerm c22;
  std::vector<int> c22Signs;
  GradedSetSpec e21;  // E-bar^2_1
  int hMultiplications = 120;
  int connectivity = 24;
  std::vector<LabeledPolytope> polytopes;
  std::vector<ReportCheck> checks;

  bool allPass() const;
};

S7Report s7Example();
std::string s7ReportJson(const S7Report& report);

// {"c": 1, "t": ["br", leaf, leaf]}, leaf = {"g", "deg", "copy", "ops"}.
std::string exprToJson(const BracketExpr& e);
BracketExpr exprFromJson(const std::string& text);

}  // namespace fcpoly
