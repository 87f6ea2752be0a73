#pragma once

// Operator-word calculus for bigraded (cosimplicial simplicial) objects.
//
// A word is written the way composites are usually written: the rightmost
// letter is applied first. Simplicial letters (faces d_i, degeneracies s_j)
// act on the simplicial level, cosimplicial letters (cofaces d^i,
// codegeneracies s^j) act on the cosimplicial level.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcpoly {

enum class LetterKind : unsigned char { SimpFace, SimpDegen, CosimpCoface, CosimpCodegen };

struct Letter {
  LetterKind kind;
  int index;

  auto operator<=>(const Letter&) const = default;

  bool isSimplicial() const { return kind == LetterKind::SimpFace || kind == LetterKind::SimpDegen; }
};

constexpr Letter face(int i) { return {LetterKind::SimpFace, i}; }
constexpr Letter degen(int j) { return {LetterKind::SimpDegen, j}; }
constexpr Letter coface(int i) { return {LetterKind::CosimpCoface, i}; }
constexpr Letter codegen(int j) { return {LetterKind::CosimpCodegen, j}; }

struct Bidegree {
  int cosimp = 0;
  int simp = 0;

  auto operator<=>(const Bidegree&) const = default;
};

// Throws Error{IndexOutOfRange} if the letter is illegal at `at`.
Bidegree applyLetter(Letter letter, Bidegree at);

class OpWord {
 public:
  OpWord() = default;
  OpWord(std::vector<Letter> letters, Bidegree source)
      : letters_(std::move(letters)), source_(source) {}

  const std::vector<Letter>& letters() const { return letters_; }
  Bidegree source() const { return source_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Bidegree reached once letters [pos, size) have acted, so stage(size()) is
  // the source and stage(0) the target. Letter pos acts on stage(pos + 1).
  // Unvalidated.
  Bidegree stage(std::size_t pos) const;

  std::size_t countOf(LetterKind kind) const;

  // `*this` applied after `first`; the sources must line up.
  OpWord after(const OpWord& first) const;

  auto operator<=>(const OpWord&) const = default;

 private:
  std::vector<Letter> letters_;
  Bidegree source_;
};

// Target bidegree. Throws IndexOutOfRange carrying the offending position.
Bidegree validate(const OpWord& word);

// Apply the unique commutation rule to letters (pos, pos+1).
// Face/face: d_i d_j = d_{j-1} d_i (i<j) or its inverse.
// Codegeneracy pair: s^j s^i = s^{i-1} s^j (i>j) or its inverse.
// Face/codegeneracy: swap, indices unchanged.
OpWord rewriteStep(const OpWord& word, std::size_t pos);

// phi o theta with phi = d_{faces[0]} ... d_{faces[q-1]}, theta = s^{codegens[0]} ...
struct CanonicalForm {
  std::vector<int> faces;
  std::vector<int> codegens;

  auto operator<=>(const CanonicalForm&) const = default;

  OpWord expand(Bidegree source) const;
  std::vector<Letter> letters() const;
};

// Words over SimpFace / CosimpCodegen letters only.
CanonicalForm normalize(const OpWord& word);

// A monotone map [domain] -> [codomain] between finite ordinals {0..k}.
struct MonotoneMap {
  int domain = 0;
  int codomain = 0;
  std::vector<int> values;

  auto operator<=>(const MonotoneMap&) const = default;

  static MonotoneMap identity(int n);
  static MonotoneMap coface(int n, int i);      // [n-1] -> [n], skips i
  static MonotoneMap codegeneracy(int n, int j);  // [n+1] -> [n], hits j twice
  MonotoneMap compose(const MonotoneMap& inner) const;  // this o inner
};

// Simplicial part is the Delta map [target.simp] -> [source.simp] realizing the
// contravariant action; cosimplicial part is [source.cosimp] -> [target.cosimp].
struct DeltaPair {
  MonotoneMap simplicial;
  MonotoneMap cosimplicial;

  auto operator<=>(const DeltaPair&) const = default;
};

DeltaPair deltaOracle(const OpWord& word);

// Eilenberg-Zilber normal form s_{j1}..s_{jp} d_{i1}..d_{iq} with
// j1 > ... > jp and i1 < ... < iq. Simplicial letters only.
OpWord simpNormalize(const OpWord& word);

// Unvalidated rewriting used for operator decorations whose level is not
// tracked: simplicial letters in Eilenberg-Zilber order followed by
// cosimplicial letters as D^{i1}..D^{ik} S^{j1}..S^{jl} (i strictly
// decreasing, j strictly increasing). Simplicial face/degeneracy pairs that
// cancel are removed; likewise codegeneracy/coface pairs.
std::vector<Letter> normalizeDecoration(std::span<const Letter> letters);

// Text syntax: d_0 / d0 (face), s_0 (degeneracy), s^0 (codegeneracy),
// D^0 / d^0 (coface); whitespace separated, leftmost applies last.
std::vector<Letter> parseLetters(std::string_view text);
std::string formatLetters(std::span<const Letter> letters);
std::string formatLetter(Letter letter);
std::string formatWord(const OpWord& word);
std::string formatCanonical(const CanonicalForm& form);

}  // namespace fcpoly
