// Chain complexes of free Z-modules with explicit boundary matrices, chain
// maps, exact homology, and induced maps on homology. Shared machinery for
// the simplicial, bar-resolution and filtered-comparison layers.

#pragma once

#include <vector>

#include "homstab/exactlin.hpp"

namespace homstab::chains {

using exactlin::AbelianGroup;
using exactlin::SparseIntMatrix;

// dims[p] is the rank of C_p; boundary[p] maps C_p -> C_{p-1} for
// 1 <= p <= top. Degrees above top are zero.
struct ChainComplex {
  std::vector<long long> dims;
  std::vector<SparseIntMatrix> boundary;  // boundary[0] unused placeholder

  int top_degree() const { return static_cast<int>(dims.size()) - 1; }
  long long dim(int p) const {
    return (p < 0 || p > top_degree()) ? 0 : dims[p];
  }
  SparseIntMatrix boundary_or_zero(int p) const;  // by value; degrees out of range give 0

  void validate() const;  // shapes and boundary*boundary == 0

  AbelianGroup homology(int p) const;
};

// Chain map f: X -> Y, degreewise matrices; degrees absent are zero maps.
struct ChainMap {
  std::vector<SparseIntMatrix> maps;  // maps[p]: C_p(X) -> C_p(Y)

  SparseIntMatrix map_or_zero(int p, long long rows, long long cols) const;
};

void validate_chain_map(const ChainComplex& x, const ChainComplex& y, const ChainMap& f);

// Map induced on H_p by a chain map, analyzed exactly.
exactlin::PresentedMapAnalysis homology_map(const ChainComplex& x, const ChainComplex& y,
                                            const ChainMap& f, int p,
                                            long long torsion_enum_cap = 1'000'000);

// Mapping cone of f: A -> X; H_p(cone) is H_p of the pair (X, A) when f is
// an inclusion of complexes.
ChainComplex mapping_cone(const ChainComplex& a, const ChainComplex& x, const ChainMap& f);

}  // namespace homstab::chains
