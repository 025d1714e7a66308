// Delta-complexes with ordered simplices: each p-simplex stores the ordered
// list of its p+1 faces. Simplices are not determined by their vertex sets,
// so loops and multi-edges are allowed. Integral homology is computed
// exactly; "reduced" uses the augmented chain complex.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homstab/chains.hpp"
#include "homstab/exactlin.hpp"

namespace homstab::complexes {

using exactlin::AbelianGroup;
using exactlin::SparseIntMatrix;

class DeltaComplex {
 public:
  DeltaComplex() = default;

  // cells[0] is the vertex count; cells[p][i] lists the ordered faces of the
  // i-th p-simplex as indices into dimension p-1.
  static DeltaComplex build(int vertex_count,
                            std::vector<std::vector<std::vector<int>>> higher_cells);

  static DeltaComplex single_point();

  int dimension() const { return static_cast<int>(cells_.size()) - 1; }  // -1 when empty
  bool empty() const { return cells_.empty() || vertex_count() == 0; }
  int vertex_count() const { return cells_.empty() ? 0 : static_cast<int>(cells_[0].size()); }
  int simplex_count(int p) const;
  long long total_simplices() const;

  const std::vector<int>& faces(int p, int i) const;
  const std::vector<int>& vertices_of(int p, int i) const;

  // unique simplex with the given ordered face tuple, if any; nullopt when
  // absent, throws when ambiguous (such complexes do not admit vertex-driven
  // simplicial maps)
  std::optional<int> simplex_with_faces(int p, const std::vector<int>& face_tuple) const;

  chains::ChainComplex chain_complex() const;
  SparseIntMatrix augmentation() const;  // 1 x n_0 row of ones

  // line-oriented text format, stable across versions (see README)
  static DeltaComplex from_text(std::istream& in);
  void to_text(std::ostream& out) const;

 private:
  // cells_[0][v] is always empty; kept so indexing is uniform
  std::vector<std::vector<std::vector<int>>> cells_;
  std::vector<std::vector<std::vector<int>>> vertex_tables_;

  void validate_and_index();
};

struct HomologyProfile {
  bool reduced = false;
  std::vector<AbelianGroup> groups;  // degrees 0..dim

  AbelianGroup at(int p) const {
    return (p < 0 || p >= static_cast<int>(groups.size())) ? AbelianGroup{} : groups[p];
  }
  bool all_trivial() const;
  std::string to_string() const;
  bool operator==(const HomologyProfile&) const = default;
};

SparseIntMatrix boundary_matrix(const DeltaComplex& x, int p);

HomologyProfile homology(const DeltaComplex& x, bool reduced);

bool is_n_spherical(const DeltaComplex& x, int n);

DeltaComplex join_with_finite_set(const DeltaComplex& x, int m);

// Subcomplex as per-dimension membership flags over a fixed parent complex.
struct Subcomplex {
  std::vector<std::vector<char>> member;  // sized like the parent's cells

  static Subcomplex empty_like(const DeltaComplex& x);
  static Subcomplex full_like(const DeltaComplex& x);
  bool contains(int p, int i) const;
  void insert(int p, int i);
  long long size() const;
  bool operator==(const Subcomplex&) const = default;
};

Subcomplex face_closure(const DeltaComplex& x, const Subcomplex& seed);
bool is_face_closed(const DeltaComplex& x, const Subcomplex& s);
Subcomplex subcomplex_intersection(const std::vector<Subcomplex>& parts);
Subcomplex subcomplex_union(const std::vector<Subcomplex>& parts);

// Materialize a face-closed subcomplex as a standalone DeltaComplex.
// old_to_new[p][i] is the new index of parent simplex (p, i), or -1.
struct ExtractedComplex {
  DeltaComplex complex;
  std::vector<std::vector<int>> old_to_new;
};
ExtractedComplex extract(const DeltaComplex& x, const Subcomplex& s);

DeltaComplex intersect_subcomplexes(const DeltaComplex& x, const std::vector<Subcomplex>& parts);

struct CoverIntersectionRecord {
  std::vector<int> indices;  // which cover pieces, 0-based
  bool must_be_empty = false;
  bool ok = false;
  std::string detail;
};

struct CoverSphericityReport {
  bool union_covers = false;
  bool hypotheses_hold = false;
  bool conclusion_holds = false;  // X itself n-spherical
  int n = 0;
  std::vector<CoverIntersectionRecord> intersections;
  bool all_ok() const { return union_covers && hypotheses_hold && conclusion_holds; }
};

CoverSphericityReport verify_cover_sphericity(const DeltaComplex& x,
                                              const std::vector<Subcomplex>& cover, int n);

AbelianGroup relative_homology(const DeltaComplex& x, const Subcomplex& a, int p);

// Quotient chain complex C(X)/C(A) with its basis bookkeeping.
struct RelativeChainData {
  chains::ChainComplex complex;
  std::vector<std::vector<int>> parent_index;  // basis -> parent simplex id
};
RelativeChainData relative_chain_complex(const DeltaComplex& x, const Subcomplex& a);

}  // namespace homstab::complexes
