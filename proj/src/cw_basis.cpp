#include "fcpoly/cw_basis.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include <json.hpp>

#include "fcpoly/error.hpp"

namespace fcpoly {

std::vector<Letter> MultiIndex::degeneracies() const {
  std::vector<Letter> out;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) out.push_back(degen(*it));
  return out;
}

std::string MultiIndex::tag() const {
  if (entries.empty()) return "";
  std::string out = "s_(";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(entries[k]);
  }
  return out + ")";
}

std::vector<MultiIndex> enumerateMultiIndices(int lambda, int n) {
  std::vector<MultiIndex> out;
  if (lambda < 0 || n < 0 || lambda > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == lambda) {
      out.push_back(MultiIndex{cur, n});
      return;
    }
    for (int v = next; v <= n - 1; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t GradedSetSpec::count(int degree) const {
  auto it = counts.find(degree);
  return it == counts.end() ? 0 : it->second;
}

std::size_t GradedSetSpec::total() const {
  std::size_t t = 0;
  for (const auto& [deg, c] : counts) t += c;
  return t;
}

std::vector<std::string> GradedSetSpec::namesIn(int degree) const {
  const std::size_t c = count(degree);
  std::vector<std::string> out;
  if (auto it = names.find(degree); it != names.end()) out = it->second;
  out.resize(std::min(out.size(), c));
  for (std::size_t j = out.size(); j < c; ++j) {
    out.push_back("iota" + std::to_string(degree) + (c > 1 ? "." + std::to_string(j) : ""));
  }
  return out;
}

void GradedSetSpec::add(int degree, std::string name) {
  ++counts[degree];
  names[degree].push_back(std::move(name));
}

GradedSetSpec merge(const GradedSetSpec& a, const GradedSetSpec& b) {
  GradedSetSpec out;
  for (const auto* s : {&a, &b}) {
    for (const auto& [deg, c] : s->counts) {
      if (c == 0) continue;
      for (auto& name : s->namesIn(deg)) out.add(deg, std::move(name));
    }
  }
  return out;
}

namespace {
const GradedSetSpec kEmpty{};

// Every s_I applied to every generator of `base`, lambda = n - baseLevel.
void decorate(GradedSetSpec& out, const GradedSetSpec& base, int n, int lambda) {
  for (const auto& I : enumerateMultiIndices(lambda, n)) {
    for (const auto& [deg, c] : base.counts) {
      if (c == 0) continue;
      for (const auto& name : base.namesIn(deg)) {
        out.add(deg, I.entries.empty() ? name : I.tag() + "<" + name + ">");
      }
    }
  }
}
}  // namespace

const GradedSetSpec& CWBasisSpec::level(int n) const {
  if (n < 0 || n >= static_cast<int>(perLevel.size())) return kEmpty;
  return perLevel[static_cast<std::size_t>(n)];
}

const GradedSetSpec& CrossTermSpec::at(int n, int r) const {
  if (n <= 0 || r <= 0) return kEmpty;
  auto it = perBidegree.find({n, r});
  return it == perBidegree.end() ? kEmpty : it->second;
}

GradedSetSpec cwDecompose(int n, const CWBasisSpec& basis) {
  GradedSetSpec out;
  for (int lambda = 0; lambda <= n; ++lambda) decorate(out, basis.level(n - lambda), n, lambda);
  return out;
}

GradedSetSpec crossTermLevel(int n, int r, const CrossTermSpec& spec) {
  GradedSetSpec out;
  for (int lambda = 0; lambda <= n; ++lambda) decorate(out, spec.at(n - lambda, r), n, lambda);
  return out;
}

LatchingStructure latchingCopies(int n) {
  LatchingStructure out;
  out.copies = std::max(n, 0);
  // s_j : X_{n-2} -> X_{n-1} needs j <= n-2, which also keeps copy j+1 in range.
  for (int j = 0; j <= n - 2; ++j) {
    for (int i = 0; i <= j; ++i) out.identifications.emplace_back(i, j);
  }
  std::sort(out.identifications.begin(), out.identifications.end());
  return out;
}

namespace {

int parseInt(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::MalformedInput, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

GradedSetSpec parseGraded(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedInput, "graded set must be an object");
  GradedSetSpec out;
  for (const auto& [key, value] : j.items()) {
    const int deg = parseInt(key);
    if (deg < 1) throw Error(Errc::MalformedInput, "degrees start at 1");
    if (value.is_number_unsigned()) {
      if (value.get<std::size_t>() > 0) out.counts[deg] = value.get<std::size_t>();
    } else if (value.is_array()) {
      for (const auto& name : value) out.add(deg, name.get<std::string>());
    } else {
      throw Error(Errc::MalformedInput, "degree " + key + ": expected a count or a list of names");
    }
  }
  return out;
}

}  // namespace

BasisFile loadBasisJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  BasisFile out;
  try {
    if (j.contains("cw")) {
      for (const auto& [key, value] : j.at("cw").items()) {
        const int n = parseInt(key);
        if (n < 0) throw Error(Errc::MalformedInput, "negative level");
        if (static_cast<int>(out.cw.perLevel.size()) <= n) out.cw.perLevel.resize(static_cast<std::size_t>(n) + 1);
        out.cw.perLevel[static_cast<std::size_t>(n)] = parseGraded(value);
      }
    }
    if (j.contains("cross")) {
      for (const auto& [key, value] : j.at("cross").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) throw Error(Errc::MalformedInput, "cross-term key must be \"n,r\"");
        const int n = parseInt(key.substr(0, comma));
        const int r = parseInt(key.substr(comma + 1));
        if (n <= 0 || r <= 0) throw Error(Errc::MalformedInput, "cross-terms vanish at n = 0 or r = 0: " + key);
        out.cross.perBidegree[{n, r}] = parseGraded(value);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  return out;
}

FormalGroupWord::FormalGroupWord(std::vector<FormalFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.sign != 1 && f.sign != -1) throw Error(Errc::MalformedInput, "factor sign must be +-1");
    for (Letter l : f.prefix.letters()) {
      if (!l.isSimplicial()) throw Error(Errc::UnsupportedLetter, formatLetter(l) + " in a simplicial prefix");
    }
    validate(f.prefix);
  }
  reduce();
}

FormalGroupWord FormalGroupWord::generator(const std::string& name, int level) {
  return FormalGroupWord({FormalFactor{1, OpWord({}, {0, level}), name}});
}

void FormalGroupWord::reduce() {
  std::vector<FormalFactor> stack;
  for (auto& f : factors_) {
    if (!stack.empty() && stack.back().sign == -f.sign && stack.back().prefix == f.prefix &&
        stack.back().generator == f.generator) {
      stack.pop_back();
    } else {
      stack.push_back(std::move(f));
    }
  }
  factors_ = std::move(stack);
}

FormalGroupWord FormalGroupWord::inverse() const {
  std::vector<FormalFactor> out(factors_.rbegin(), factors_.rend());
  for (auto& f : out) f.sign = -f.sign;
  FormalGroupWord w;
  w.factors_ = std::move(out);
  return w;
}

FormalGroupWord FormalGroupWord::operator*(const FormalGroupWord& rhs) const {
  FormalGroupWord w;
  w.factors_ = factors_;
  w.factors_.insert(w.factors_.end(), rhs.factors_.begin(), rhs.factors_.end());
  w.reduce();
  return w;
}

std::string FormalGroupWord::str() const {
  if (factors_.empty()) return "e";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += " * ";
    std::string atom = f.prefix.empty() ? f.generator : formatWord(f.prefix) + " " + f.generator;
    out += f.sign > 0 ? "(" + atom + ")" : "(" + atom + ")^-1";
  }
  return out;
}

namespace {

constexpr int kMaxSubstitutionDepth = 64;

FormalGroupWord applyAtom(std::vector<Letter> ops, const FormalFactor& f, const FaceImages& images, int depth) {
  if (depth > kMaxSubstitutionDepth) throw Error(Errc::NonReducible, "face-image substitution does not terminate");
  ops.insert(ops.end(), f.prefix.letters().begin(), f.prefix.letters().end());
  OpWord normal = simpNormalize(OpWord(std::move(ops), f.prefix.source()));
  const auto& letters = normal.letters();
  if (!letters.empty() && letters.back().kind == LetterKind::SimpFace) {
    auto it = images.find({f.generator, letters.back().index});
    if (it != images.end()) {
      std::vector<Letter> rest(letters.begin(), letters.end() - 1);
      FormalGroupWord out;
      for (const auto& g : it->second.factors()) {
        if (g.level() != f.prefix.source().simp - 1) {
          throw Error(Errc::MalformedInput, "face image of " + f.generator + " has the wrong level");
        }
        out = out * applyAtom(rest, g, images, depth + 1);
      }
      return f.sign > 0 ? out : out.inverse();
    }
  }
  return FormalGroupWord({FormalFactor{f.sign, std::move(normal), f.generator}});
}

bool facesVanish(const FormalGroupWord& w, int level, int from, const FaceImages& images) {
  for (int i = from; i <= level; ++i) {
    const Letter d = face(i);
    if (!applyOps({&d, 1}, w, images).isIdentity()) return false;
  }
  return true;
}

}  // namespace

FormalGroupWord applyOps(std::span<const Letter> ops, const FormalGroupWord& w, const FaceImages& images) {
  FormalGroupWord out;
  const std::vector<Letter> prefix(ops.begin(), ops.end());
  for (const auto& f : w.factors()) out = out * applyAtom(prefix, f, images, 0);
  return out;
}

bool isChain(const FormalGroupWord& w, int level, const FaceImages& images) {
  return facesVanish(w, level, 1, images);
}

bool isCycle(const FormalGroupWord& w, int level, const FaceImages& images) {
  return facesVanish(w, level, 0, images);
}

bool checkMatchingTuple(const MatchingTuple& t, const FaceImages& images) {
  if (t.k < 0 || t.k > t.n || static_cast<int>(t.components.size()) != t.n - t.k + 1) {
    throw Error(Errc::MalformedInput, "matching tuple needs components x_k..x_n");
  }
  for (const auto& x : t.components) {
    for (const auto& f : x.factors()) {
      if (f.level() != t.n - 1) throw Error(Errc::MalformedInput, "component not at level n-1");
    }
  }
  // At n = 1 the faces would land in X_{-1}: the condition is vacuous.
  if (t.n - 1 < 1) return true;
  auto x = [&](int j) -> const FormalGroupWord& { return t.components[static_cast<std::size_t>(j - t.k)]; };
  for (int i = t.k; i <= t.n; ++i) {
    for (int j = i + 1; j <= t.n; ++j) {
      const Letter di = face(i);
      const Letter dj = face(j - 1);
      if (applyOps({&di, 1}, x(j), images) != applyOps({&dj, 1}, x(i), images)) return false;
    }
  }
  return true;
}

FormalGroupWord tauNormalize(const std::string& tau, int n, const FaceImages& images) {
  if (n < 1) throw Error(Errc::MalformedInput, "tauNormalize needs n >= 1");
  FormalGroupWord t = FormalGroupWord::generator(tau, n);
  for (int i = 0; i < n; ++i) {
    const std::vector<Letter> correction{degen(n - i - 1), face(n - i)};
    t = t * applyOps(correction, t, images).inverse();
  }
  for (int i = 1; i <= n; ++i) {
    const Letter d = face(i);
    FormalGroupWord rest = applyOps({&d, 1}, t, images);
    if (!rest.isIdentity()) {
      throw Error(Errc::NonReducible, "d_" + std::to_string(i) + " tau_" + std::to_string(n) + " = " + rest.str());
    }
  }
  return t;
}

}  // namespace fcpoly
