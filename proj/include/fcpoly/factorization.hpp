#pragma once

// Factorizations of a composite face-codegeneracy map psi and the labelled
// polyhedron P^{n+m}_n(psi).

#include <cstddef>
#include <string>
#include <vector>

#include "fcpoly/polytope.hpp"
#include "fcpoly/simplex_ops.hpp"

namespace fcpoly {

// psi : E^{n+k}_{m+l} -> E^k_l with n codegeneracies and m faces.
struct TargetMap {
  CanonicalForm canonical;
  Bidegree source;

  int nCodegens() const { return static_cast<int>(canonical.codegens.size()); }
  int mFaces() const { return static_cast<int>(canonical.faces.size()); }
  int length() const { return nCodegens() + mFaces(); }
  Bidegree target() const;
  OpWord word() const { return canonical.expand(source); }

  auto operator<=>(const TargetMap&) const = default;
};

// Normalizes `word` and records its source.
TargetMap makeTarget(const OpWord& word);

struct Factorization {
  OpWord word;
  // sigma(p) is the label of the letter at position p, position 1 being the
  // rightmost (first applied) letter. Labels 1..n are codegeneracies.
  Permutation perm;
};

// All (n+m)! factorizations, ordered by permutation.
std::vector<Factorization> enumerateFactorizations(const TargetMap& psi);

struct FactorClass {
  std::vector<OpWord> members;  // sorted by text
  OpWord repr;                  // the member at the class-representative permutation
};

struct LabeledPolytope {
  TargetMap psi;
  CellComplex complex;
  std::vector<FactorClass> labels;  // indexed by vertex class id
  std::vector<Factorization> factorizations;

  // Word of the factorization at a given permutation.
  const OpWord& wordAt(const Permutation& sigma) const;
};

LabeledPolytope labelPolytope(const TargetMap& psi);

// (n, m, k, l) of rho : E^{n+k}_{m+l} -> E^k_l.
struct Frame {
  int n = 0;
  int m = 0;
  int k = 0;
  int l = 0;

  auto operator<=>(const Frame&) const = default;
  Bidegree source() const { return {n + k, m + l}; }
};

// An element of C(psi): a map keyed by canonical form, together with every
// bidegree frame in which it occurs as an allowable subcomposite.
struct AllowableMap {
  CanonicalForm form;
  std::vector<Frame> frames;
};

std::vector<AllowableMap> allowableSubcomposites(const TargetMap& psi);

// Cut rule on one factorization: letters [lo, hi] (0 = leftmost) form an
// allowable subcomposite when neither outer neighbour forms a face/face pair
// with the adjacent end letter.
bool allowableCut(const OpWord& word, std::size_t lo, std::size_t hi);

struct BoundaryFacet {
  std::size_t cell;                 // cell id in the labelled complex
  std::vector<BlockLabel> blocks;   // position order
  // Sub-maps in composition order: scheme.front() is applied last.
  std::vector<TargetMap> scheme;
};

std::vector<BoundaryFacet> boundaryScheme(const LabeledPolytope& labeled);
std::vector<BoundaryFacet> boundaryScheme(const TargetMap& psi);

// JSON document {"psi", "classes", "edges", "facets", ...}; the figure golden
// files hold exactly this text.
std::string factorizationJson(const LabeledPolytope& labeled);
std::string factorizationDot(const LabeledPolytope& labeled);

}  // namespace fcpoly
