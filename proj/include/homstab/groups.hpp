// Finite permutation groups stored by full element enumeration, the
// distinguished families (symmetric, signed symmetric, type-D), direct
// products, and simplicial actions on DeltaComplexes with orbits,
// stabilizers and the without-inversions check.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homstab/complexes.hpp"

namespace homstab::groups {

inline constexpr long long kDefaultElementCap = 10'000;

struct Perm {
  std::vector<int> img;  // img[i] = image of point i

  int degree() const { return static_cast<int>(img.size()); }
  int operator[](int x) const { return img[x]; }
  bool is_identity() const;
  Perm inverse() const;
  static Perm identity(int degree);

  auto operator<=>(const Perm&) const = default;
};

// (a * b)(x) = a(b(x))
Perm operator*(const Perm& a, const Perm& b);

class FinitePermGroup {
 public:
  FinitePermGroup() = default;

  // Enumerates the closure of the generators; throws ResourceCapError when
  // the enumeration would exceed element_cap.
  static FinitePermGroup from_generators(int degree, std::vector<Perm> generators,
                                         std::vector<std::string> labels = {},
                                         long long element_cap = kDefaultElementCap);

  // Builds a group from an explicit element list. Closure is verified
  // exhaustively up to closure_check_limit elements, by sampling above that.
  static FinitePermGroup from_elements(int degree, std::vector<Perm> elements,
                                       std::vector<std::string> labels = {},
                                       long long element_cap = kDefaultElementCap,
                                       long long closure_check_limit = 2000);

  int degree() const { return degree_; }
  long long size() const { return static_cast<long long>(elements_.size()); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& element(int i) const { return elements_[i]; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string point_label(int i) const;

  std::optional<int> index_of(const Perm& p) const;
  bool contains(const Perm& p) const { return index_of(p).has_value(); }
  int identity_index() const { return 0; }  // elements are sorted, identity first
  int compose(int i, int j) const;          // index of element(i) * element(j)
  int inverse(int i) const;

  bool is_subset_of(const FinitePermGroup& g) const;

 private:
  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;  // sorted lexicographically; identity at 0
  std::map<Perm, int> index_;
  std::vector<std::string> labels_;

  void finalize();
};

FinitePermGroup trivial_group(int degree);
FinitePermGroup symmetric_group(int n);

// Permutations of {-n..-1, 1..n} commuting with negation. Point i < n is the
// letter i+1; point n + k is the letter -(k+1).
FinitePermGroup signed_symmetric_group(int n);
int signed_point(int n, int letter);   // letter in {-n..-1, 1..n} -> point index
int signed_letter(int n, int point);   // inverse of signed_point

// Index-2 subgroup of the signed group: evenly many sign changes (type D).
FinitePermGroup weyl_d_group(int n);

// Acts on the disjoint union of the two ground sets.
FinitePermGroup direct_product(const FinitePermGroup& a, const FinitePermGroup& b);

// Element indices of H as elements of G; H elements are extended by the
// identity when H has smaller degree. Throws when H is not a subgroup.
std::vector<int> embed_elements(const FinitePermGroup& h, const FinitePermGroup& g);

// ---------------------------------------------------------------------------

// A group acting simplicially on a DeltaComplex through vertex permutations.
// Construction validates that every element induces a simplex-to-simplex map
// in every dimension (ordered faces map to ordered faces); complexes whose
// simplices are not determined by their ordered faces are rejected.
class SimplicialAction {
 public:
  static SimplicialAction natural(std::shared_ptr<const complexes::DeltaComplex> complex,
                                  std::shared_ptr<const FinitePermGroup> group);

  const complexes::DeltaComplex& complex() const { return *complex_; }
  const FinitePermGroup& group() const { return *group_; }
  std::shared_ptr<const complexes::DeltaComplex> complex_ptr() const { return complex_; }
  std::shared_ptr<const FinitePermGroup> group_ptr() const { return group_; }

  int apply(int element, int p, int simplex) const { return table_[element][p][simplex]; }

 private:
  std::shared_ptr<const complexes::DeltaComplex> complex_;
  std::shared_ptr<const FinitePermGroup> group_;
  std::vector<std::vector<std::vector<int>>> table_;  // [element][dim][simplex]
};

// Orbit partition of the p-simplices; orbits sorted by minimal element.
std::vector<std::vector<int>> orbits(const SimplicialAction& action, int p);

// Subgroup preserving the simplex (pointwise = fixing all its vertices).
FinitePermGroup stabilizer(const SimplicialAction& action, int p, int simplex,
                           bool pointwise = false);

struct InversionWitness {
  int element, p, simplex;
};
std::optional<InversionWitness> find_inversion(const SimplicialAction& action);
bool is_without_inversions(const SimplicialAction& action);

}  // namespace homstab::groups
