#include "fcpoly/simplex_ops.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "fcpoly/error.hpp"

namespace fcpoly {

const char* errcName(Errc code) {
  switch (code) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NoRuleApplies: return "NoRuleApplies";
    case Errc::UnsupportedLetter: return "UnsupportedLetter";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::InvalidQuotient: return "InvalidQuotient";
    case Errc::NotASphereCandidate: return "NotASphereCandidate";
    case Errc::UnsupportedDim: return "UnsupportedDim";
    case Errc::NonReducible: return "NonReducible";
    case Errc::InhomogeneousOperand: return "InhomogeneousOperand";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

int enumerationLimit() {
  if (const char* env = std::getenv("FCPOLY_MAX_N")) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
    if (ec == std::errc() && *ptr == '\0' && value >= 1) return value;
  }
  return 8;
}

namespace {

std::string describe(Letter letter, Bidegree at) {
  std::ostringstream os;
  os << formatLetter(letter) << " at (cosimp=" << at.cosimp << ", simp=" << at.simp << ")";
  return os.str();
}

bool isFace(Letter l) { return l.kind == LetterKind::SimpFace; }
bool isCodegen(Letter l) { return l.kind == LetterKind::CosimpCodegen; }

// Commute two face letters: d_a d_b with a<b -> d_{b-1} d_a, otherwise the
// inverse d_a d_b -> d_b d_{a+1}.
std::pair<Letter, Letter> swapFaces(Letter left, Letter right) {
  if (left.index < right.index) return {face(right.index - 1), face(left.index)};
  return {face(right.index), face(left.index + 1)};
}

std::pair<Letter, Letter> swapCodegens(Letter left, Letter right) {
  if (left.index < right.index) return {codegen(right.index - 1), codegen(left.index)};
  return {codegen(right.index), codegen(left.index + 1)};
}

// Sort a run of faces (or codegeneracies) into strictly increasing order
// using only the commutation identity.
template <typename Swap>
void bubbleIncreasing(std::vector<Letter>& run, Swap swap) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < run.size(); ++k) {
      if (run[k].index >= run[k + 1].index) {
        std::tie(run[k], run[k + 1]) = swap(run[k], run[k + 1]);
        changed = true;
      }
    }
  }
}

// One pass of the simplicial identities towards s..s d..d. Returns true if
// anything changed.
bool simplicialPass(std::vector<Letter>& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    Letter x = w[k];
    Letter y = w[k + 1];
    if (x.kind == LetterKind::SimpFace && y.kind == LetterKind::SimpDegen) {
      const int i = x.index;
      const int j = y.index;
      if (i < j) {
        w[k] = degen(j - 1);
        w[k + 1] = face(i);
      } else if (i == j || i == j + 1) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(k + 2));
      } else {
        w[k] = degen(j);
        w[k + 1] = face(i - 1);
      }
      return true;
    }
    if (x.kind == LetterKind::SimpFace && y.kind == LetterKind::SimpFace && x.index >= y.index) {
      w[k] = face(y.index);
      w[k + 1] = face(x.index + 1);
      return true;
    }
    if (x.kind == LetterKind::SimpDegen && y.kind == LetterKind::SimpDegen && x.index <= y.index) {
      // s_i s_j = s_{j+1} s_i for i <= j
      w[k] = degen(y.index + 1);
      w[k + 1] = degen(x.index);
      return true;
    }
  }
  return false;
}

bool cosimplicialPass(std::vector<Letter>& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    Letter x = w[k];
    Letter y = w[k + 1];
    if (x.kind == LetterKind::CosimpCodegen && y.kind == LetterKind::CosimpCoface) {
      const int j = x.index;
      const int i = y.index;
      if (i < j) {
        w[k] = coface(i);
        w[k + 1] = codegen(j - 1);
      } else if (i == j || i == j + 1) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(k + 2));
      } else {
        w[k] = coface(i - 1);
        w[k + 1] = codegen(j);
      }
      return true;
    }
    if (x.kind == LetterKind::CosimpCoface && y.kind == LetterKind::CosimpCoface && x.index <= y.index) {
      // d^j d^i = d^i d^{j-1} for i < j, read right to left
      w[k] = coface(y.index + 1);
      w[k + 1] = coface(x.index);
      return true;
    }
    if (x.kind == LetterKind::CosimpCodegen && y.kind == LetterKind::CosimpCodegen && x.index >= y.index) {
      std::tie(w[k], w[k + 1]) = swapCodegens(x, y);
      return true;
    }
  }
  return false;
}

}  // namespace

Bidegree applyLetter(Letter letter, Bidegree at) {
  if (at.cosimp < 0 || at.simp < 0) throw Error(Errc::IndexOutOfRange, "negative bidegree");
  const int i = letter.index;
  bool ok = i >= 0;
  Bidegree out = at;
  switch (letter.kind) {
    case LetterKind::SimpFace:
      ok = ok && at.simp >= 1 && i <= at.simp;
      out.simp -= 1;
      break;
    case LetterKind::SimpDegen:
      ok = ok && i <= at.simp;
      out.simp += 1;
      break;
    case LetterKind::CosimpCodegen:
      ok = ok && i <= at.cosimp - 1;
      out.cosimp -= 1;
      break;
    case LetterKind::CosimpCoface:
      ok = ok && i <= at.cosimp + 1;
      out.cosimp += 1;
      break;
  }
  if (!ok) throw Error(Errc::IndexOutOfRange, describe(letter, at));
  return out;
}

Bidegree OpWord::stage(std::size_t pos) const {
  Bidegree b = source_;
  for (std::size_t k = letters_.size(); k > pos; --k) {
    switch (letters_[k - 1].kind) {
      case LetterKind::SimpFace: b.simp -= 1; break;
      case LetterKind::SimpDegen: b.simp += 1; break;
      case LetterKind::CosimpCodegen: b.cosimp -= 1; break;
      case LetterKind::CosimpCoface: b.cosimp += 1; break;
    }
  }
  return b;
}

std::size_t OpWord::countOf(LetterKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [kind](Letter l) { return l.kind == kind; }));
}

OpWord OpWord::after(const OpWord& first) const {
  std::vector<Letter> letters = letters_;
  letters.insert(letters.end(), first.letters().begin(), first.letters().end());
  return OpWord(std::move(letters), first.source());
}

Bidegree validate(const OpWord& word) {
  Bidegree b = word.source();
  const auto& letters = word.letters();
  for (std::size_t k = letters.size(); k > 0; --k) {
    try {
      b = applyLetter(letters[k - 1], b);
    } catch (const Error& e) {
      throw Error(Errc::IndexOutOfRange,
                  "letter " + std::to_string(k - 1) + " (" + describe(letters[k - 1], b) + ")", k - 1);
    }
  }
  return b;
}

OpWord rewriteStep(const OpWord& word, std::size_t pos) {
  validate(word);
  if (pos + 1 >= word.size()) throw Error(Errc::NoRuleApplies, "position out of range", pos);
  std::vector<Letter> letters = word.letters();
  Letter& x = letters[pos];
  Letter& y = letters[pos + 1];
  if (isFace(x) && isFace(y)) {
    std::tie(x, y) = swapFaces(x, y);
  } else if (isCodegen(x) && isCodegen(y)) {
    std::tie(x, y) = swapCodegens(x, y);
  } else if ((isFace(x) && isCodegen(y)) || (isCodegen(x) && isFace(y))) {
    std::swap(x, y);
  } else {
    throw Error(Errc::NoRuleApplies, formatLetter(x) + " " + formatLetter(y), pos);
  }
  return OpWord(std::move(letters), word.source());
}

OpWord CanonicalForm::expand(Bidegree source) const {
  return OpWord(letters(), source);
}

std::vector<Letter> CanonicalForm::letters() const {
  std::vector<Letter> out;
  out.reserve(faces.size() + codegens.size());
  for (int i : faces) out.push_back(face(i));
  for (int j : codegens) out.push_back(codegen(j));
  return out;
}

CanonicalForm normalize(const OpWord& word) {
  validate(word);
  std::vector<Letter> faces;
  std::vector<Letter> codegens;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const Letter l = word.letters()[k];
    if (isFace(l)) {
      faces.push_back(l);
    } else if (isCodegen(l)) {
      codegens.push_back(l);
    } else {
      throw Error(Errc::UnsupportedLetter, formatLetter(l) + " outside the face/codegeneracy calculus", k);
    }
  }
  bubbleIncreasing(faces, swapFaces);
  bubbleIncreasing(codegens, swapCodegens);
  CanonicalForm form;
  for (Letter l : faces) form.faces.push_back(l.index);
  for (Letter l : codegens) form.codegens.push_back(l.index);
  return form;
}

MonotoneMap MonotoneMap::identity(int n) {
  MonotoneMap m{n, n, {}};
  for (int v = 0; v <= n; ++v) m.values.push_back(v);
  return m;
}

MonotoneMap MonotoneMap::coface(int n, int i) {
  MonotoneMap m{n - 1, n, {}};
  for (int v = 0; v <= n - 1; ++v) m.values.push_back(v < i ? v : v + 1);
  return m;
}

MonotoneMap MonotoneMap::codegeneracy(int n, int j) {
  MonotoneMap m{n + 1, n, {}};
  for (int v = 0; v <= n + 1; ++v) m.values.push_back(v <= j ? v : v - 1);
  return m;
}

MonotoneMap MonotoneMap::compose(const MonotoneMap& inner) const {
  MonotoneMap m{inner.domain, codomain, {}};
  m.values.reserve(inner.values.size());
  for (int v : inner.values) m.values.push_back(values[static_cast<std::size_t>(v)]);
  return m;
}

DeltaPair deltaOracle(const OpWord& word) {
  validate(word);
  Bidegree cur = word.source();
  MonotoneMap simp = MonotoneMap::identity(cur.simp);
  MonotoneMap cosimp = MonotoneMap::identity(cur.cosimp);
  const auto& letters = word.letters();
  for (std::size_t k = letters.size(); k > 0; --k) {
    const Letter l = letters[k - 1];
    switch (l.kind) {
      case LetterKind::SimpFace:
        simp = simp.compose(MonotoneMap::coface(cur.simp, l.index));
        break;
      case LetterKind::SimpDegen:
        simp = simp.compose(MonotoneMap::codegeneracy(cur.simp, l.index));
        break;
      case LetterKind::CosimpCoface:
        cosimp = MonotoneMap::coface(cur.cosimp + 1, l.index).compose(cosimp);
        break;
      case LetterKind::CosimpCodegen:
        cosimp = MonotoneMap::codegeneracy(cur.cosimp - 1, l.index).compose(cosimp);
        break;
    }
    cur = applyLetter(l, cur);
  }
  return {std::move(simp), std::move(cosimp)};
}

OpWord simpNormalize(const OpWord& word) {
  validate(word);
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!word.letters()[k].isSimplicial()) {
      throw Error(Errc::UnsupportedLetter, formatLetter(word.letters()[k]) + " is not simplicial", k);
    }
  }
  std::vector<Letter> letters = word.letters();
  while (simplicialPass(letters)) {
  }
  return OpWord(std::move(letters), word.source());
}

std::vector<Letter> normalizeDecoration(std::span<const Letter> letters) {
  std::vector<Letter> simp;
  std::vector<Letter> cosimp;
  for (Letter l : letters) (l.isSimplicial() ? simp : cosimp).push_back(l);
  while (simplicialPass(simp)) {
  }
  while (cosimplicialPass(cosimp)) {
  }
  simp.insert(simp.end(), cosimp.begin(), cosimp.end());
  return simp;
}

std::string formatLetter(Letter letter) {
  switch (letter.kind) {
    case LetterKind::SimpFace: return "d_" + std::to_string(letter.index);
    case LetterKind::SimpDegen: return "s_" + std::to_string(letter.index);
    case LetterKind::CosimpCoface: return "D^" + std::to_string(letter.index);
    case LetterKind::CosimpCodegen: return "s^" + std::to_string(letter.index);
  }
  return "?";
}

std::string formatLetters(std::span<const Letter> letters) {
  if (letters.empty()) return "id";
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k) out += ' ';
    out += formatLetter(letters[k]);
  }
  return out;
}

std::string formatWord(const OpWord& word) { return formatLetters(word.letters()); }

std::string formatCanonical(const CanonicalForm& form) { return formatLetters(form.letters()); }

std::vector<Letter> parseLetters(std::string_view text) {
  std::vector<Letter> out;
  std::size_t pos = 0;
  auto fail = [&](std::string_view token, const char* why) {
    throw Error(Errc::ParseError, "token '" + std::string(token) + "': " + why);
  };
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "id") continue;

    const char head = token[0];
    std::string_view rest = token.substr(1);
    char marker = '\0';
    if (!rest.empty() && (rest[0] == '_' || rest[0] == '^')) {
      marker = rest[0];
      rest.remove_prefix(1);
    }
    if (rest.size() >= 2 && rest.front() == '{' && rest.back() == '}') rest = rest.substr(1, rest.size() - 2);
    int index = -1;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), index);
    if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size()) fail(token, "bad index");

    LetterKind kind{};
    if (head == 'd' && marker != '^') {
      kind = LetterKind::SimpFace;
    } else if ((head == 'd' || head == 'D') && marker == '^') {
      kind = LetterKind::CosimpCoface;
    } else if (head == 's' && marker == '_') {
      kind = LetterKind::SimpDegen;
    } else if ((head == 's' || head == 'S') && marker == '^') {
      kind = LetterKind::CosimpCodegen;
    } else {
      fail(token, "unknown letter (use d_i, s_j, s^j, D^i)");
    }
    out.push_back({kind, index});
  }
  return out;
}

}  // namespace fcpoly
