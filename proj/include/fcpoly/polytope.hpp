#pragma once

// Permutohedra and face-codegeneracy polyhedra as explicit cell complexes.
//
// A vertex of P^N is a permutation sigma, read as the labels sigma(1..N)
// sitting at positions 1..N. Faces are ordered set partitions (B_1,..,B_k) of
// the labels: sigma lies in the face when positions 1..|B_1| carry B_1, the
// next |B_2| positions carry B_2, and so on. Labels > n are "face" letters;
// P^N_n identifies two vertices that differ by swapping adjacent positions
// both carrying face letters.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fcpoly {

class Permutation {
 public:
  Permutation() = default;
  // images[p-1] = sigma(p); must be a bijection on {1..N}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int position) const { return images_[static_cast<std::size_t>(position - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation swapPositions(int position) const;  // swaps positions p, p+1
  std::string oneLine() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Lexicographic rank among all permutations of the same size.
std::size_t lexRank(const Permutation& sigma);

struct BlockLabel {
  int length = 0;
  int codegens = 0;

  auto operator<=>(const BlockLabel&) const = default;
};

// Product-rule dimension of prod P^{length}_{codegens}.
int productDimension(const std::vector<BlockLabel>& blocks);

struct VertexClass {
  std::vector<Permutation> members;  // sorted; members.front() is the representative

  const Permutation& repr() const { return members.front(); }
};

struct Cell {
  int dim = 0;
  std::vector<std::size_t> vertices;  // sorted vertex-class ids
  std::vector<BlockLabel> blocks;     // product decomposition, in position order
  // Representative ordered set partition of the labels, adjacent face-only
  // blocks merged.
  std::vector<std::vector<int>> partition;
};

class CellComplex {
 public:
  CellComplex(int N, int n, std::vector<VertexClass> vertices, std::vector<Cell> cells);

  int N() const { return N_; }
  int n() const { return n_; }
  int dimension() const { return cells_[top_].dim; }

  const std::vector<VertexClass>& vertices() const { return vertices_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t top() const { return top_; }

  // Cells of dimension dim-1 contained in `cell`.
  const std::vector<std::size_t>& facets(std::size_t cell) const { return facets_[cell]; }

  std::size_t classOf(const Permutation& sigma) const;
  std::optional<std::size_t> findCell(const std::vector<std::size_t>& sortedVertices) const;

  // 1-skeleton as sorted pairs of vertex-class ids.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  void computeFacets();

  int N_;
  int n_;
  std::vector<VertexClass> vertices_;
  std::vector<Cell> cells_;
  std::size_t top_ = 0;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::size_t> classByRank_;
  std::map<std::vector<std::size_t>, std::size_t> cellByVertices_;
};

// Full face lattice of P^N built directly from ordered set partitions.
CellComplex permutohedron(int N);

// Quotient P^N_n, 0 <= n <= N (n = N is P^N itself).
CellComplex fcPolytope(int N, int n);

struct LocalFace {
  std::vector<int> blockLengths;  // consecutive position blocks
  std::vector<BlockLabel> decomposition;
};

// Consecutive-block partitions admissible at sigma: every cut between
// positions p and p+1 has sigma(p) <= n or sigma(p+1) <= n. Each is a cell
// above the class of sigma; cells reached only through a cut between two
// face labels (e.g. the edges at [123] in P^3_1) are not listed.
std::vector<LocalFace> facetsAtVertex(const Permutation& sigma, int N, int n);

// Cell counts per dimension; the top cell only when includeTop.
std::vector<std::size_t> fVector(const CellComplex& c, bool includeTop = false);

int eulerBoundary(const CellComplex& c);

enum class ExportFormat { Json, Dot, Off };

// Optional per-vertex label strings replace the member lists in DOT / JSON.
std::string exportComplex(const CellComplex& c, ExportFormat format,
                          const std::vector<std::string>* vertexLabels = nullptr);

// Checks that mapping vertex classes of `a` through `vertexMap` carries the
// cells of `a` bijectively onto the cells of `b`, preserving dimensions and
// the covering relation.
bool isomorphicVia(const CellComplex& a, const CellComplex& b, const std::vector<std::size_t>& vertexMap);

// Vertex map matching class representatives; nullopt if they differ.
std::optional<std::vector<std::size_t>> matchByRepresentative(const CellComplex& a, const CellComplex& b);

}  // namespace fcpoly
