// The complex of injective words X(n) over n letters and its signed
// analogue, together with the group actions, cover pieces, standard flags,
// translation elements, and the exhaustive five-condition audit used by the
// stability machinery.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homstab/groups.hpp"

namespace homstab::wordcomplexes {

using complexes::DeltaComplex;
using complexes::Subcomplex;
using groups::FinitePermGroup;
using groups::SimplicialAction;

// A p-simplex is a word of p+1 pairwise-distinct letters. For the signed
// complex the letters are nonzero integers in {-n..n} with pairwise-distinct
// absolute values; for the plain complex they are 1..n. Simplex identity is
// the letter tuple, and d_j deletes the j-th letter.
struct WordComplex {
  int n = 0;
  bool with_signs = false;
  std::shared_ptr<const DeltaComplex> complex;
  std::shared_ptr<const FinitePermGroup> group;
  SimplicialAction action;
  std::vector<std::vector<std::vector<int>>> words;  // [p][simplex] -> letters

  const std::vector<int>& word(int p, int i) const { return words[p][i]; }
  std::optional<int> simplex_of_word(const std::vector<int>& w) const;
  std::string word_name(int p, int i) const;
  int vertex_of_letter(int letter) const;
};

WordComplex injective_words_complex(int n);
WordComplex signed_injective_words_complex(int n);

// Face closure of the simplices whose first letter is i (for the signed
// complex: first letter +-i). i is a positive letter label.
Subcomplex cover_piece(const WordComplex& w, int i);

// All n cover pieces in letter order.
std::vector<Subcomplex> cover_pieces(const WordComplex& w);

// The subgroup of the acting group fixing every letter of absolute value
// > k; the standard copy of G_k inside G_n.
FinitePermGroup standard_subgroup(const WordComplex& w, int k);

struct FlagData {
  // sigma^i = word (n, n-1, ..., n-i); simplices[i] is its id in dimension i
  std::vector<int> simplices;
  std::vector<FinitePermGroup> stabilizers;          // computed from the action
  std::vector<FinitePermGroup> standard_subgroups;   // the designated G_{n-i-1}
  std::vector<bool> stabilizer_is_standard;
  int r() const { return static_cast<int>(simplices.size()) - 1; }
};

// Requires r <= n-1.
FlagData standard_flag(const WordComplex& w, int r);

// Element g with g(tau1) = tau2 commuting with every element of the
// (pointwise) stabilizer of rho; tau1, tau2 must be i-faces of the
// (i+1)-simplex rho. Returns the first such element in enumeration order.
std::optional<int> translation_element(const WordComplex& w, int i, int tau1, int tau2, int rho);

struct ConditionResult {
  bool pass = false;
  std::string witness;  // empty when passing
};

struct QuillenAuditReport {
  int n = 0;
  int r = 0;
  bool with_signs = false;
  ConditionResult without_inversions;   // (i)
  ConditionResult connectivity;         // (ii) homological r-connectivity
  ConditionResult orbit_transitivity;   // (iii)
  ConditionResult flag_stabilizers;     // (iv)
  ConditionResult translations;         // (v)
  bool all_pass() const {
    return without_inversions.pass && connectivity.pass && orbit_transitivity.pass &&
           flag_stabilizers.pass && translations.pass;
  }
};

QuillenAuditReport audit_quillen_conditions(const WordComplex& w, const FlagData& flag, int r);

}  // namespace homstab::wordcomplexes
