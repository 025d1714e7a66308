// Integral group homology of small finite groups through the truncated
// normalized bar complex: C_p is the free Z-module on p-tuples of
// non-identity elements, tuples containing the identity are suppressed.
// Induced maps of injective homomorphisms act tuple-wise.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homstab/caps.hpp"
#include "homstab/chains.hpp"
#include "homstab/complexes.hpp"
#include "homstab/groups.hpp"

namespace homstab::grouphomology {

using complexes::HomologyProfile;
using exactlin::AbelianGroup;
using exactlin::SparseIntMatrix;
using groups::FinitePermGroup;

struct BarComplex {
  const FinitePermGroup* group = nullptr;  // not owned
  int truncation = 0;                      // chains in degrees 0..truncation
  chains::ChainComplex chains;

  long long basis_size(int p) const { return chains.dim(p); }
  // tuple of non-identity element indices <-> basis index (mixed radix)
  long long index_of_tuple(const std::vector<int>& tuple) const;
  std::vector<int> tuple_of_index(int p, long long index) const;
};

// Normalized bar complex truncated at degree r+1; throws ResourceCapError
// when (|G|-1)^{r+1} exceeds caps.max_bar_basis.
BarComplex bar_complex(const FinitePermGroup& g, int r, const Caps& caps = {});

// H_p(G; Z) for p = 0..r.
HomologyProfile group_homology(const FinitePermGroup& g, int r, const Caps& caps = {});

struct InducedMapReport {
  AbelianGroup source, target;
  bool injective = false, surjective = false;
  bool iso() const { return injective && surjective; }
  SparseIntMatrix matrix_on_generators;
  std::vector<exactlin::Int> target_gen_orders;
};

// element_map[i] = index in G of the image of H's element i under an
// injective homomorphism (validated).
InducedMapReport induced_map(const FinitePermGroup& h, const FinitePermGroup& g,
                             const std::vector<int>& element_map, int r,
                             const Caps& caps = {});

// Subgroup inclusion via identity-extension embedding.
InducedMapReport induced_inclusion_map(const FinitePermGroup& h, const FinitePermGroup& g, int r,
                                       const Caps& caps = {});

// True iff conjugation by g acts as the identity on H_r(G).
bool conjugation_invariance_check(const FinitePermGroup& g, int element, int r,
                                  const Caps& caps = {});

struct KunnethReport {
  int r = 0;
  std::vector<AbelianGroup> h_product;    // H_i(A x B) computed directly
  std::vector<AbelianGroup> h_predicted;  // from H_*(A), H_*(B)
  std::vector<AbelianGroup> h_a, h_b;
  bool match = true;
  std::string detail;
};

// Verifies H_1(AxB) = H_1(A) + H_1(B) and, at r = 2,
// H_2(AxB) = H_2(A) + (H_1(A) tensor H_1(B)) + H_2(B); the degree-2 Tor
// terms vanish because H_0 is free.
KunnethReport kunneth_check(const FinitePermGroup& a, const FinitePermGroup& b, int r,
                            const Caps& caps = {});

enum class Family { symmetric, signed_symmetric };
std::string family_name(Family f);
FinitePermGroup family_group(Family f, int n);

struct StabilityReport {
  Family family{};
  int r = 0, n = 0;
  AbelianGroup source, target;
  bool iso = false;
  bool in_range = false;  // n > 2r
  // fails only when the paper's range promises an iso and it is not one
  bool consistent() const { return !in_range || iso; }
};

StabilityReport stability_check(Family family, int r, int n, const Caps& caps = {});

// H_1 oracle independent of the bar complex: abelianization from the
// relation lattice of a breadth-first search over the Cayley graph.
AbelianGroup abelianization(const FinitePermGroup& g);

}  // namespace homstab::grouphomology
