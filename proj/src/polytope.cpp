#include "fcpoly/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "fcpoly/error.hpp"

namespace fcpoly {

namespace {

using Mask = std::uint32_t;
using Partition = std::vector<Mask>;

struct VectorHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using CellIndex = std::unordered_map<std::vector<std::size_t>, std::size_t, VectorHash>;

Mask lowMask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }

std::vector<int> labelsOf(Mask m) {
  std::vector<int> out;
  for (int b = 0; b < 32; ++b) {
    if (m & (Mask{1} << b)) out.push_back(b + 1);
  }
  return out;
}

void forEachOrderedPartition(int N, const std::function<void(const Partition&)>& visit) {
  Partition current;
  std::function<void(Mask)> recurse = [&](Mask remaining) {
    if (remaining == 0) {
      visit(current);
      return;
    }
    for (Mask sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
      current.push_back(sub);
      recurse(remaining & ~sub);
      current.pop_back();
    }
  };
  recurse(lowMask(N));
}

// Visits every permutation lying in the face `p`, as a label sequence in
// position order.
void forEachWordInFace(const Partition& p, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::vector<int>> blocks;
  int total = 0;
  for (Mask m : p) {
    blocks.push_back(labelsOf(m));
    total += static_cast<int>(blocks.back().size());
  }
  std::vector<int> word(static_cast<std::size_t>(total));
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t b, std::size_t offset) {
    if (b == blocks.size()) {
      visit(word);
      return;
    }
    std::vector<int> perm = blocks[b];
    do {
      std::copy(perm.begin(), perm.end(), word.begin() + static_cast<std::ptrdiff_t>(offset));
      recurse(b + 1, offset + perm.size());
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  recurse(0, 0);
}

std::size_t rankOf(const std::vector<int>& a) {
  const std::size_t n = a.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[j] < a[i]) ++smaller;
    }
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

// Adjacent blocks with no codegeneracy label collapse to a point; merging
// them gives the non-degenerate preimage.
Partition coarsen(const Partition& p, int n) {
  const Mask low = lowMask(n);
  Partition out;
  for (Mask m : p) {
    if (!out.empty() && (out.back() & low) == 0 && (m & low) == 0) {
      out.back() |= m;
    } else {
      out.push_back(m);
    }
  }
  return out;
}

std::vector<BlockLabel> labelPartition(const Partition& p, int n) {
  std::vector<BlockLabel> out;
  for (Mask m : p) out.push_back({std::popcount(m), std::popcount(m & lowMask(n))});
  return out;
}

std::vector<std::vector<int>> explicitPartition(const Partition& p) {
  std::vector<std::vector<int>> out;
  for (Mask m : p) out.push_back(labelsOf(m));
  return out;
}

Partition maskPartition(const std::vector<std::vector<int>>& p) {
  Partition out;
  for (const auto& block : p) {
    Mask m = 0;
    for (int l : block) m |= Mask{1} << (l - 1);
    out.push_back(m);
  }
  return out;
}

std::vector<std::size_t> imageOf(const Partition& p, const std::vector<std::size_t>& classByRank) {
  std::vector<std::size_t> image;
  forEachWordInFace(p, [&](const std::vector<int>& w) { image.push_back(classByRank[rankOf(w)]); });
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image;
}

// Sort each maximal run of face labels (> n); yields the lexicographically
// least member of the class.
std::vector<int> classRepresentative(std::vector<int> w, int n) {
  std::size_t k = 0;
  while (k < w.size()) {
    if (w[k] <= n) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < w.size() && w[end] > n) ++end;
    std::sort(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(end));
    k = end;
  }
  return w;
}

void checkSize(int N) {
  if (N < 1) throw Error(Errc::MalformedInput, "N must be >= 1");
  if (N > enumerationLimit()) {
    throw Error(Errc::SizeLimit, "N=" + std::to_string(N) + " exceeds enumeration bound " +
                                     std::to_string(enumerationLimit()));
  }
}

std::vector<VertexClass> quotientClasses(int N, int n) {
  std::map<std::vector<int>, VertexClass> byRepr;
  std::vector<int> w(static_cast<std::size_t>(N));
  std::iota(w.begin(), w.end(), 1);
  do {
    byRepr[classRepresentative(w, n)].members.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  std::vector<VertexClass> out;
  out.reserve(byRepr.size());
  for (auto& [repr, cls] : byRepr) out.push_back(std::move(cls));
  return out;
}

std::vector<std::size_t> classTable(int N, const std::vector<VertexClass>& classes) {
  std::size_t total = 1;
  for (int k = 2; k <= N; ++k) total *= static_cast<std::size_t>(k);
  std::vector<std::size_t> table(total);
  for (std::size_t id = 0; id < classes.size(); ++id) {
    for (const auto& m : classes[id].members) table[lexRank(m)] = id;
  }
  return table;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)]) {
      throw Error(Errc::MalformedInput, "not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::swapPositions(int position) const {
  std::vector<int> images = images_;
  std::swap(images.at(static_cast<std::size_t>(position - 1)), images.at(static_cast<std::size_t>(position)));
  return Permutation(std::move(images));
}

std::string Permutation::oneLine() const {
  std::string out;
  for (int v : images_) {
    if (size() > 9 && !out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::size_t lexRank(const Permutation& sigma) { return rankOf(sigma.images()); }

int productDimension(const std::vector<BlockLabel>& blocks) {
  int dim = 0;
  for (const auto& b : blocks) {
    if (b.codegens >= 1) dim += b.length - 1;
  }
  return dim;
}

CellComplex::CellComplex(int N, int n, std::vector<VertexClass> vertices, std::vector<Cell> cells)
    : N_(N), n_(n), vertices_(std::move(vertices)), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
  });
  if (cells_.empty()) throw Error(Errc::InvalidQuotient, "empty complex");
  top_ = cells_.size() - 1;
  if (cells_.size() > 1 && cells_[top_ - 1].dim == cells_[top_].dim) {
    throw Error(Errc::InvalidQuotient, "no unique top cell");
  }
  classByRank_ = classTable(N_, vertices_);
  computeFacets();
}

std::size_t CellComplex::classOf(const Permutation& sigma) const {
  if (sigma.size() != N_) throw Error(Errc::MalformedInput, "permutation size mismatch");
  return classByRank_[lexRank(sigma)];
}

std::optional<std::size_t> CellComplex::findCell(const std::vector<std::size_t>& sortedVertices) const {
  auto it = cellByVertices_.find(sortedVertices);
  if (it == cellByVertices_.end()) return std::nullopt;
  return it->second;
}

void CellComplex::computeFacets() {
  CellIndex index;
  index.reserve(cells_.size());
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    index.emplace(cells_[k].vertices, k);
    cellByVertices_.emplace(cells_[k].vertices, k);
  }

  facets_.assign(cells_.size(), {});
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const Cell& cell = cells_[k];
    if (cell.dim == 0) continue;
    const Partition p = maskPartition(cell.partition);
    std::set<std::size_t> found;
    for (std::size_t b = 0; b < p.size(); ++b) {
      const Mask block = p[b];
      for (Mask sub = (block - 1) & block; sub != 0; sub = (sub - 1) & block) {
        Partition split(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(b));
        split.push_back(sub);
        split.push_back(block & ~sub);
        split.insert(split.end(), p.begin() + static_cast<std::ptrdiff_t>(b + 1), p.end());
        auto it = index.find(imageOf(split, classByRank_));
        if (it == index.end()) throw Error(Errc::InvalidQuotient, "sub-face image is not a cell");
        if (cells_[it->second].dim == cell.dim - 1) found.insert(it->second);
      }
    }
    facets_[k].assign(found.begin(), found.end());
  }
}

std::vector<std::pair<std::size_t, std::size_t>> CellComplex::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : cells_) {
    if (c.dim != 1) continue;
    if (c.vertices.size() != 2) throw Error(Errc::InvalidQuotient, "edge without two endpoints");
    out.emplace_back(c.vertices[0], c.vertices[1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CellComplex permutohedron(int N) {
  checkSize(N);
  std::vector<VertexClass> vertices;
  std::vector<int> w(static_cast<std::size_t>(N));
  std::iota(w.begin(), w.end(), 1);
  do {
    vertices.push_back(VertexClass{{Permutation(w)}});
  } while (std::next_permutation(w.begin(), w.end()));

  std::vector<Cell> cells;
  forEachOrderedPartition(N, [&](const Partition& p) {
    Cell cell;
    cell.dim = N - static_cast<int>(p.size());
    forEachWordInFace(p, [&](const std::vector<int>& word) { cell.vertices.push_back(rankOf(word)); });
    std::sort(cell.vertices.begin(), cell.vertices.end());
    cell.blocks = labelPartition(p, N - 1);
    cell.partition = explicitPartition(p);
    cells.push_back(std::move(cell));
  });
  return CellComplex(N, N - 1, std::move(vertices), std::move(cells));
}

CellComplex fcPolytope(int N, int n) {
  checkSize(N);
  if (n < 0 || n > N) throw Error(Errc::MalformedInput, "need 0 <= n <= N");

  std::vector<VertexClass> classes = quotientClasses(N, n);
  const std::vector<std::size_t> classByRank = classTable(N, classes);

  CellIndex index;
  std::vector<Cell> cells;
  forEachOrderedPartition(N, [&](const Partition& p) {
    const Partition coarse = coarsen(p, n);
    std::vector<BlockLabel> labels = labelPartition(coarse, n);
    const int dim = productDimension(labels);
    std::vector<std::size_t> image = imageOf(p, classByRank);
    auto [it, inserted] = index.try_emplace(image, cells.size());
    if (inserted) {
      cells.push_back(Cell{dim, std::move(image), std::move(labels), explicitPartition(coarse)});
      return;
    }
    const Cell& existing = cells[it->second];
    if (existing.dim != dim || existing.blocks != labels) {
      throw Error(Errc::InvalidQuotient, "merged cells disagree on decomposition labels");
    }
  });
  return CellComplex(N, n, std::move(classes), std::move(cells));
}

std::vector<LocalFace> facetsAtVertex(const Permutation& sigma, int N, int n) {
  if (sigma.size() != N) throw Error(Errc::MalformedInput, "permutation size mismatch");
  if (n < 0 || n > N) throw Error(Errc::MalformedInput, "need 0 <= n <= N");
  std::vector<LocalFace> out;
  const Mask gaps = lowMask(N - 1);
  for (Mask cuts = 0; cuts <= gaps; ++cuts) {
    bool admissible = true;
    for (int p = 1; p < N && admissible; ++p) {
      if ((cuts & (Mask{1} << (p - 1))) && sigma(p) > n && sigma(p + 1) > n) admissible = false;
    }
    if (!admissible) continue;
    LocalFace face;
    int start = 1;
    for (int p = 1; p <= N; ++p) {
      if (p == N || (cuts & (Mask{1} << (p - 1)))) {
        BlockLabel label{p - start + 1, 0};
        for (int q = start; q <= p; ++q) {
          if (sigma(q) <= n) ++label.codegens;
        }
        face.blockLengths.push_back(label.length);
        face.decomposition.push_back(label);
        start = p + 1;
      }
    }
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(),
            [](const LocalFace& a, const LocalFace& b) { return a.blockLengths < b.blockLengths; });
  return out;
}

std::vector<std::size_t> fVector(const CellComplex& c, bool includeTop) {
  const int dim = c.dimension();
  std::vector<std::size_t> f(static_cast<std::size_t>(includeTop ? dim + 1 : dim), 0);
  for (std::size_t k = 0; k < c.cells().size(); ++k) {
    if (!includeTop && k == c.top()) continue;
    ++f[static_cast<std::size_t>(c.cells()[k].dim)];
  }
  return f;
}

int eulerBoundary(const CellComplex& c) {
  if (c.n() == 0) throw Error(Errc::NotASphereCandidate, "P^N_0 is a point");
  int chi = 0;
  const auto f = fVector(c, false);
  for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<int>(f[d]);
  return chi;
}

namespace {

std::string memberList(const VertexClass& v) {
  std::string out;
  for (const auto& m : v.members) {
    if (!out.empty()) out += ' ';
    out += m.oneLine();
  }
  return out;
}

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

// Geometric vertex of the word sigma: label l sits at coordinate position.
// Centroid over the class, projected to the hyperplane sum(x) = const.
std::vector<double> projectedCentroid(const VertexClass& v, int N) {
  std::vector<double> x(static_cast<std::size_t>(N), 0.0);
  for (const auto& m : v.members) {
    for (int p = 1; p <= N; ++p) x[static_cast<std::size_t>(m(p) - 1)] += p;
  }
  for (double& xi : x) xi /= static_cast<double>(v.members.size());
  // Helmert basis of the sum-zero hyperplane.
  std::vector<double> out;
  for (int k = 1; k < N; ++k) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += x[static_cast<std::size_t>(i)];
    acc -= k * x[static_cast<std::size_t>(k)];
    out.push_back(acc / std::sqrt(static_cast<double>(k * (k + 1))));
  }
  return out;
}

std::string exportOff(const CellComplex& c) {
  if (c.dimension() != 3) {
    throw Error(Errc::UnsupportedDim, "OFF export needs a 3-dimensional complex, got dim " +
                                          std::to_string(c.dimension()));
  }
  std::vector<std::vector<std::size_t>> polygons;
  const auto edges = c.edges();
  for (const auto& cell : c.cells()) {
    if (cell.dim != 2) continue;
    // Walk the boundary cycle of the 2-cell along its edges.
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& [a, b] : edges) {
      if (std::binary_search(cell.vertices.begin(), cell.vertices.end(), a) &&
          std::binary_search(cell.vertices.begin(), cell.vertices.end(), b)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
    std::vector<std::size_t> cycle{cell.vertices.front()};
    std::size_t prev = cell.vertices.front();
    std::size_t cur = adj[prev].empty() ? prev : adj[prev].front();
    while (cur != cell.vertices.front() && cycle.size() <= cell.vertices.size()) {
      cycle.push_back(cur);
      const auto& next = adj[cur];
      std::size_t step = next.front() == prev ? next.back() : next.front();
      prev = cur;
      cur = step;
    }
    if (cycle.size() != cell.vertices.size()) throw Error(Errc::InvalidQuotient, "2-cell is not a polygon");
    polygons.push_back(std::move(cycle));
  }
  std::ostringstream os;
  os << "OFF\n# format_version 1\n# P^" << c.N() << "_" << c.n() << "\n";
  os << c.vertices().size() << ' ' << polygons.size() << " 0\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& v : c.vertices()) {
    const auto xyz = projectedCentroid(v, c.N());
    os << xyz[0] << ' ' << xyz[1] << ' ' << xyz[2] << '\n';
  }
  for (const auto& poly : polygons) {
    os << poly.size();
    for (std::size_t v : poly) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string exportComplex(const CellComplex& c, ExportFormat format, const std::vector<std::string>* vertexLabels) {
  auto labelOf = [&](std::size_t v) {
    return vertexLabels ? (*vertexLabels)[v] : memberList(c.vertices()[v]);
  };
  switch (format) {
    case ExportFormat::Off:
      return exportOff(c);
    case ExportFormat::Dot: {
      std::ostringstream os;
      os << "// format_version: 1\n";
      os << "graph \"P^" << c.N() << "_" << c.n() << "\" {\n";
      for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        os << "  \"" << c.vertices()[v].repr().oneLine() << "\" [label=\"" << dotEscape(labelOf(v)) << "\"];\n";
      }
      for (const auto& [a, b] : c.edges()) {
        os << "  \"" << c.vertices()[a].repr().oneLine() << "\" -- \"" << c.vertices()[b].repr().oneLine()
           << "\";\n";
      }
      os << "}\n";
      return os.str();
    }
    case ExportFormat::Json: {
      nlohmann::ordered_json j;
      j["format_version"] = 1;
      j["N"] = c.N();
      j["n"] = c.n();
      j["dim"] = c.dimension();
      j["f_vector"] = fVector(c, true);
      j["vertices"] = nlohmann::ordered_json::array();
      for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        nlohmann::ordered_json rec;
        rec["id"] = v;
        rec["repr"] = c.vertices()[v].repr().oneLine();
        rec["members"] = nlohmann::ordered_json::array();
        for (const auto& m : c.vertices()[v].members) rec["members"].push_back(m.oneLine());
        if (vertexLabels) rec["label"] = (*vertexLabels)[v];
        j["vertices"].push_back(std::move(rec));
      }
      j["cells"] = nlohmann::ordered_json::array();
      for (const auto& cell : c.cells()) {
        nlohmann::ordered_json rec;
        rec["dim"] = cell.dim;
        rec["vertices"] = cell.vertices;
        rec["blocks"] = nlohmann::ordered_json::array();
        for (const auto& b : cell.blocks) rec["blocks"].push_back({b.length, b.codegens});
        j["cells"].push_back(std::move(rec));
      }
      j["top"] = c.top();
      return j.dump(2) + "\n";
    }
  }
  throw Error(Errc::MalformedInput, "unknown export format");
}

bool isomorphicVia(const CellComplex& a, const CellComplex& b, const std::vector<std::size_t>& vertexMap) {
  if (a.cells().size() != b.cells().size() || vertexMap.size() != a.vertices().size() ||
      a.vertices().size() != b.vertices().size()) {
    return false;
  }
  std::vector<std::size_t> sorted = vertexMap;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != k) return false;
  }
  CellIndex bIndex;
  for (std::size_t k = 0; k < b.cells().size(); ++k) bIndex.emplace(b.cells()[k].vertices, k);

  std::vector<std::size_t> cellMap(a.cells().size());
  for (std::size_t k = 0; k < a.cells().size(); ++k) {
    std::vector<std::size_t> image;
    for (std::size_t v : a.cells()[k].vertices) image.push_back(vertexMap[v]);
    std::sort(image.begin(), image.end());
    auto it = bIndex.find(image);
    if (it == bIndex.end() || b.cells()[it->second].dim != a.cells()[k].dim) return false;
    cellMap[k] = it->second;
  }
  for (std::size_t k = 0; k < a.cells().size(); ++k) {
    std::vector<std::size_t> mapped;
    for (std::size_t f : a.facets(k)) mapped.push_back(cellMap[f]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != b.facets(cellMap[k])) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> matchByRepresentative(const CellComplex& a, const CellComplex& b) {
  if (a.N() != b.N() || a.vertices().size() != b.vertices().size()) return std::nullopt;
  std::vector<std::size_t> map;
  for (const auto& v : a.vertices()) {
    const std::size_t target = b.classOf(v.repr());
    if (b.vertices()[target].repr() != v.repr()) return std::nullopt;
    map.push_back(target);
  }
  return map;
}

}  // namespace fcpoly
