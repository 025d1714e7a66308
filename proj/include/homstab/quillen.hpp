// The spectral-sequence side of the stability machinery: the E^1 page
// assembled from flag stabilizers, the d^1 face-map pattern, the filtered
// five-lemma comparison, and the orbit-quotient transfer criterion, each
// verified by direct exact computation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homstab/caps.hpp"
#include "homstab/grouphomology.hpp"
#include "homstab/wordcomplexes.hpp"

namespace homstab::quillen {

using complexes::Subcomplex;
using exactlin::AbelianGroup;
using exactlin::SparseIntMatrix;
using grouphomology::Family;
using groups::FinitePermGroup;
using wordcomplexes::FlagData;
using wordcomplexes::WordComplex;

struct E1Page {
  int n = 0, r = 0;
  bool with_signs = false;
  // entry[p][q] = H_q(Stab(sigma^p)) for p <= min(r+1, n-1), q <= r
  std::vector<std::vector<AbelianGroup>> entry;
  std::vector<std::string> provenance;  // one line per column
  std::vector<std::string> render_text() const;
};

// Requires the audit to pass; extends the flag to length min(r+1, n-1)+1.
E1Page e1_page(const WordComplex& w, const FlagData& flag, int r, const Caps& caps = {});

struct D1FaceMapRecord {
  int p = 0;
  bool maps_equal = false;
  bool d1_is_zero = false;          // p even
  bool iso = false;                 // verdict of the common map (p odd)
  bool in_range = false;            // stability range n-p-1 > 2q
  bool equals_inclusion = false;    // common map is the standard inclusion
  std::string detail;
};

struct D1PatternReport {
  int n = 0, r = 0, q = 0;
  std::vector<D1FaceMapRecord> records;  // p = 0..min(r, n-2)
  bool all_pass = true;                  // maps equal and in-range isos hold
};

D1PatternReport d1_pattern_check(const WordComplex& w, const FlagData& flag, int r, int q,
                                 const Caps& caps = {});

// ---------------------------------------------------------------------------
// Filtered chain complexes and the comparison proposition
// ---------------------------------------------------------------------------

struct FilteredChainComplex {
  chains::ChainComplex complex;
  std::vector<std::vector<int>> level;  // level[p][i] in 0..num_levels-1
  int num_levels = 0;

  void validate() const;  // boundary respects the filtration
  // subquotient complex spanned by cells with lo < level <= hi
  chains::ChainComplex slice(int lo, int hi) const;
};

struct FilteredMapData {
  FilteredChainComplex x, y;
  chains::ChainMap f;

  void validate() const;  // chain map, filtration-preserving
};

struct FilteredCheckRecord {
  int i = 0, p = 1, j = 0;  // pair (X_i, X_{i-p}) in degree j
  bool iso = false;
};

struct FilteredComparisonReport {
  int k = 0;
  bool hypothesis_holds = false;   // relative isos for j <= k+1, all i
  bool conclusion_holds = false;   // H_j(X) -> H_j(Y) iso for j <= k
  bool intermediate_all = false;   // the triple-wise isos of the induction
  std::vector<FilteredCheckRecord> failures;
};

FilteredComparisonReport verify_filtered_comparison(const FilteredMapData& data, int k,
                                                    const Caps& caps = {});

// Deterministic generator for comparison instances whose hypotheses hold by
// construction: Y = X plus per-level acyclic two-term summands, both sides
// shuffled by filtration-preserving unimodular changes of basis.
FilteredMapData random_comparison_instance(unsigned long long seed);

// ---------------------------------------------------------------------------
// Orbit-quotient transfer
// ---------------------------------------------------------------------------

struct TransferConditions {
  wordcomplexes::ConditionResult without_inversions;   // (i)
  wordcomplexes::ConditionResult invariance;           // (ii)
  wordcomplexes::ConditionResult connectivity;         // (iii) both complexes
  wordcomplexes::ConditionResult orbit_surjectivity;   // (iv), dims <= k+1
  wordcomplexes::ConditionResult orbit_coherence;      // (v), dims <= k+1
  wordcomplexes::ConditionResult stabilizer_homology;  // (vi)
};

struct TransferReport {
  int k = 0;
  TransferConditions conditions;
  bool conditions_hold = false;
  bool conclusion_checked = false;
  bool conclusion_holds = false;  // H_j(G) -> H_j(G') iso for j <= k
  std::string detail;
};

// G' acts on X' through `action`; the subgroup G is given by element indices
// into G', and X by a G-invariant subcomplex. Conditions (iv) and (v) are
// checked in dimensions <= k+1, the range the filtration comparison uses.
TransferReport verify_orbit_quotient_transfer(const groups::SimplicialAction& action,
                                              const std::vector<int>& subgroup_elements,
                                              const Subcomplex& x, int k,
                                              const Caps& caps = {});

// The word-complex transfer instance: G_n <= G_{n+1} acting on
// X(n) inside X(n+1), for either family.
struct TransferInstance {
  WordComplex big;
  std::vector<int> subgroup_elements;
  Subcomplex sub;
};
TransferInstance word_transfer_instance(Family family, int n);

// ---------------------------------------------------------------------------
// End-to-end pipeline
// ---------------------------------------------------------------------------

struct PipelineStage {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PipelineReport {
  Family family{};
  int n = 0, r = 0;
  std::vector<PipelineStage> stages;
  std::optional<E1Page> page;
  bool all_pass = true;
};

// Builds X(n), audits the five conditions, checks the inductive homology
// hypotheses directly, assembles the E^1 page, runs the d^1 checks for
// q <= r, and verifies the conclusion H_r(G_{n-1}) -> H_r(G_n) by bar
// resolution, independently of the spectral sequence.
PipelineReport stability_pipeline(Family family, int r, int n, const Caps& caps = {});

}  // namespace homstab::quillen
