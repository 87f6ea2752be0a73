#include "fcpoly/factorization.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

#include "fcpoly/error.hpp"

namespace fcpoly {

namespace {

bool isFace(Letter l) { return l.kind == LetterKind::SimpFace; }

OpWord subword(const OpWord& word, std::size_t lo, std::size_t hi) {
  std::vector<Letter> letters(word.letters().begin() + static_cast<std::ptrdiff_t>(lo),
                              word.letters().begin() + static_cast<std::ptrdiff_t>(hi + 1));
  return OpWord(std::move(letters), word.stage(hi + 1));
}

// Labels in position order (position 1 = rightmost letter).
Permutation toPermutation(const std::vector<int>& labelsByIndex) {
  return Permutation(std::vector<int>(labelsByIndex.rbegin(), labelsByIndex.rend()));
}

}  // namespace

Bidegree TargetMap::target() const { return validate(word()); }

TargetMap makeTarget(const OpWord& word) { return TargetMap{normalize(word), word.source()}; }

std::vector<Factorization> enumerateFactorizations(const TargetMap& psi) {
  const int N = psi.length();
  if (N > enumerationLimit()) {
    throw Error(Errc::SizeLimit, "n+m=" + std::to_string(N) + " exceeds enumeration bound " +
                                     std::to_string(enumerationLimit()));
  }
  const OpWord canonical = psi.word();
  validate(canonical);

  // Breadth-first closure from the canonical factorization (the identity
  // vertex); each adjacent swap is one commutation identity.
  std::vector<int> startLabels(static_cast<std::size_t>(N));
  for (int idx = 0; idx < N; ++idx) startLabels[static_cast<std::size_t>(idx)] = N - idx;

  std::map<Permutation, OpWord> seen;
  std::deque<std::pair<std::vector<int>, OpWord>> frontier;
  seen.emplace(toPermutation(startLabels), canonical);
  frontier.emplace_back(startLabels, canonical);
  while (!frontier.empty()) {
    auto [labels, word] = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t pos = 0; pos + 1 < word.size(); ++pos) {
      OpWord next = rewriteStep(word, pos);
      std::vector<int> nextLabels = labels;
      std::swap(nextLabels[pos], nextLabels[pos + 1]);
      Permutation sigma = toPermutation(nextLabels);
      auto [it, inserted] = seen.emplace(sigma, next);
      if (inserted) {
        frontier.emplace_back(std::move(nextLabels), std::move(next));
      } else if (it->second != next) {
        throw Error(Errc::InvalidQuotient, "factorization at " + sigma.oneLine() + " depends on the path");
      }
    }
  }

  std::vector<Factorization> out;
  out.reserve(seen.size());
  for (auto& [sigma, word] : seen) out.push_back(Factorization{std::move(word), sigma});
  return out;
}

const OpWord& LabeledPolytope::wordAt(const Permutation& sigma) const {
  auto it = std::lower_bound(factorizations.begin(), factorizations.end(), sigma,
                             [](const Factorization& f, const Permutation& p) { return f.perm < p; });
  if (it == factorizations.end() || it->perm != sigma) throw Error(Errc::MalformedInput, "no such vertex");
  return it->word;
}

LabeledPolytope labelPolytope(const TargetMap& psi) {
  const int N = psi.length();
  if (N < 1) throw Error(Errc::MalformedInput, "psi must have at least one letter");
  std::vector<Factorization> factorizations = enumerateFactorizations(psi);
  CellComplex complex = fcPolytope(N, psi.nCodegens());

  std::vector<FactorClass> labels(complex.vertices().size());
  for (const auto& f : factorizations) {
    const std::size_t id = complex.classOf(f.perm);
    labels[id].members.push_back(f.word);
    if (complex.vertices()[id].repr() == f.perm) labels[id].repr = f.word;
  }
  for (auto& cls : labels) {
    std::sort(cls.members.begin(), cls.members.end(),
              [](const OpWord& a, const OpWord& b) { return formatWord(a) < formatWord(b); });
  }
  return LabeledPolytope{psi, std::move(complex), std::move(labels), std::move(factorizations)};
}

bool allowableCut(const OpWord& word, std::size_t lo, std::size_t hi) {
  const auto& letters = word.letters();
  if (lo > hi || hi >= letters.size()) return false;
  if (lo > 0 && isFace(letters[lo - 1]) && isFace(letters[lo])) return false;
  if (hi + 1 < letters.size() && isFace(letters[hi]) && isFace(letters[hi + 1])) return false;
  return true;
}

std::vector<AllowableMap> allowableSubcomposites(const TargetMap& psi) {
  std::map<CanonicalForm, std::set<Frame>> found;
  for (const auto& f : enumerateFactorizations(psi)) {
    const OpWord& word = f.word;
    for (std::size_t lo = 0; lo < word.size(); ++lo) {
      for (std::size_t hi = lo; hi < word.size(); ++hi) {
        if (!allowableCut(word, lo, hi)) continue;
        const OpWord rho = subword(word, lo, hi);
        const Bidegree target = word.stage(lo);
        Frame frame{static_cast<int>(rho.countOf(LetterKind::CosimpCodegen)),
                    static_cast<int>(rho.countOf(LetterKind::SimpFace)), target.cosimp, target.simp};
        found[normalize(rho)].insert(frame);
      }
    }
  }
  std::vector<AllowableMap> out;
  for (auto& [form, frames] : found) out.push_back(AllowableMap{form, {frames.begin(), frames.end()}});
  return out;
}

std::vector<BoundaryFacet> boundaryScheme(const LabeledPolytope& labeled) {
  const CellComplex& complex = labeled.complex;
  const int N = complex.N();
  if (labeled.psi.nCodegens() < 1) throw Error(Errc::NotASphereCandidate, "boundary scheme needs n >= 1");

  std::vector<BoundaryFacet> out;
  for (std::size_t k = 0; k < complex.cells().size(); ++k) {
    const Cell& cell = complex.cells()[k];
    if (cell.dim != N - 2 || k == complex.top()) continue;

    std::vector<int> images;
    for (const auto& block : cell.partition) images.insert(images.end(), block.begin(), block.end());
    const OpWord& word = labeled.wordAt(Permutation(images));

    BoundaryFacet facet{k, cell.blocks, {}};
    int start = 1;
    for (const auto& block : cell.partition) {
      const int end = start + static_cast<int>(block.size()) - 1;
      const std::size_t lo = static_cast<std::size_t>(N - end);
      const std::size_t hi = static_cast<std::size_t>(N - start);
      facet.scheme.push_back(makeTarget(subword(word, lo, hi)));
      start = end + 1;
    }
    std::reverse(facet.scheme.begin(), facet.scheme.end());
    out.push_back(std::move(facet));
  }
  return out;
}

std::vector<BoundaryFacet> boundaryScheme(const TargetMap& psi) { return boundaryScheme(labelPolytope(psi)); }

std::string factorizationJson(const LabeledPolytope& labeled) {
  using json = nlohmann::ordered_json;
  const CellComplex& c = labeled.complex;
  json j;
  j["format_version"] = 1;
  j["psi"] = formatWord(labeled.psi.word());
  j["source"] = {{"cosimp", labeled.psi.source.cosimp}, {"simp", labeled.psi.source.simp}};
  j["N"] = c.N();
  j["n"] = c.n();
  j["f_vector"] = fVector(c, true);
  j["classes"] = json::array();
  for (std::size_t v = 0; v < labeled.labels.size(); ++v) {
    json rec;
    rec["vertex"] = c.vertices()[v].repr().oneLine();
    rec["repr"] = formatWord(labeled.labels[v].repr);
    rec["members"] = json::array();
    for (const auto& w : labeled.labels[v].members) rec["members"].push_back(formatWord(w));
    j["classes"].push_back(std::move(rec));
  }
  j["edges"] = json::array();
  for (const auto& [a, b] : c.edges()) j["edges"].push_back({a, b});
  j["facets"] = json::array();
  if (labeled.psi.nCodegens() >= 1) {
    for (const auto& f : boundaryScheme(labeled)) {
      json rec;
      rec["blocks"] = json::array();
      for (const auto& b : f.blocks) rec["blocks"].push_back({b.length, b.codegens});
      rec["scheme"] = json::array();
      for (const auto& rho : f.scheme) {
        rec["scheme"].push_back({{"map", formatWord(rho.word())}, {"source", {rho.source.cosimp, rho.source.simp}}});
      }
      j["facets"].push_back(std::move(rec));
    }
  }
  return j.dump(2) + "\n";
}

std::string factorizationDot(const LabeledPolytope& labeled) {
  std::vector<std::string> names;
  for (const auto& cls : labeled.labels) {
    std::string s;
    for (const auto& w : cls.members) {
      if (!s.empty()) s += " = ";
      s += formatWord(w);
    }
    names.push_back(std::move(s));
  }
  return exportComplex(labeled.complex, ExportFormat::Dot, &names);
}

}  // namespace fcpoly
