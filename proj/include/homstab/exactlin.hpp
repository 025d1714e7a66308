// Exact sparse integer linear algebra: Smith normal form, ranks,
// kernel/cokernel structure of finitely generated abelian groups.
// This is the computational substrate for every homology computation
// in the toolkit; everything here is exact over Z (no floating point,
// no modular shortcuts).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homstab {

using Int = boost::multiprecision::cpp_int;

// Raised when a computation would exceed a configured resource cap.
// Caps are explicit errors, never silent truncation.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exactlin {

using homstab::Int;

// Sparse matrix over Z with arbitrary-precision entries, row-major.
// Invariant: no explicitly stored zero entry, all indices in bounds.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols);

  static SparseIntMatrix identity(int n);
  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int get(int r, int c) const;
  void set(int r, int c, Int v);
  void add(int r, int c, const Int& v);

  const std::map<int, Int>& row(int r) const { return data_[r]; }
  std::vector<Int> column_vector(int c) const;
  std::vector<Int> apply(const std::vector<Int>& x) const;  // M*x

  long long nnz() const;
  bool is_zero() const;

  SparseIntMatrix transpose() const;
  SparseIntMatrix hstack(const SparseIntMatrix& other) const;  // [this | other]

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
  bool operator==(const SparseIntMatrix& o) const = default;

  std::vector<std::vector<Int>> to_dense() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, Int>> data_;
};

struct SNFOptions {
  bool left = false;           // U with U*M*V = D
  bool left_inverse = false;   // U^{-1}
  bool right = false;          // V
  bool right_inverse = false;  // V^{-1}
};

// diagonal holds the nonzero invariant factors, positive, d_i | d_{i+1}.
struct SmithDecomposition {
  std::vector<Int> diagonal;
  std::optional<SparseIntMatrix> left, left_inverse, right, right_inverse;
  int rank() const { return static_cast<int>(diagonal.size()); }
};

SmithDecomposition smith_decompose(const SparseIntMatrix& m, const SNFOptions& opt = {});

// Full Smith normal form with unimodular transforms: left*M*right = diag.
struct SNFResult {
  std::vector<Int> diagonal;
  SparseIntMatrix left;
  SparseIntMatrix right;
};

SNFResult snf(const SparseIntMatrix& m);

// Diagonal only; no transform bookkeeping (the homology hot path).
std::vector<Int> snf_diagonal(const SparseIntMatrix& m);

int rank(const SparseIntMatrix& m);

// Bareiss fraction-free determinant; requires a square matrix.
Int determinant(const SparseIntMatrix& m);

// Isomorphism type of a finitely generated abelian group:
// Z^free_rank + Z/d_1 + ... with each d_i > 1 and d_i | d_{i+1}.
struct AbelianGroup {
  long long free_rank = 0;
  std::vector<Int> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::optional<Int> order() const;  // nullopt when infinite
  std::string to_string() const;     // "0", "Z^2", "Z + Z/2 + Z/4", ...
  bool operator==(const AbelianGroup& o) const = default;
};

// Normalize an arbitrary list of cyclic orders (>1 each kept, 1 dropped)
// into invariant-factor form.
AbelianGroup from_cyclic_orders(long long free_rank, std::vector<Int> orders);

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
AbelianGroup tensor_product(const AbelianGroup& a, const AbelianGroup& b);
AbelianGroup tor_product(const AbelianGroup& a, const AbelianGroup& b);

// ker(A) / im(B) for consecutive boundary maps; rejects A*B != 0.
AbelianGroup quotient_structure(const SparseIntMatrix& A, const SparseIntMatrix& B);

// Z^ambient_rank / im(B).
AbelianGroup cokernel_structure(int ambient_rank, const SparseIntMatrix& B);

// Membership oracle for the column lattice im(B), backed by one SNF with U.
class ImageMembership {
 public:
  explicit ImageMembership(const SparseIntMatrix& B);
  bool contains(const std::vector<Int>& z) const;

 private:
  SparseIntMatrix u_;
  std::vector<Int> diagonal_;
  int ambient_ = 0;
};

// A homomorphism of presented abelian groups Z^a/im(P) --F--> Z^b/im(Q),
// analyzed exactly: isomorphism types of source/target/cokernel, an
// injectivity/surjectivity verdict, and the map written on SNF-adapted
// generating sets (entries reduced mod the target generator orders, so two
// maps against the same target presentation compare canonically).
struct PresentedMapAnalysis {
  AbelianGroup source, target, cokernel;
  bool injective = false;
  bool surjective = false;
  bool iso() const { return injective && surjective; }
  SparseIntMatrix matrix_on_generators;  // (#target gens) x (#source gens)
  std::vector<Int> target_gen_orders;    // per row; 0 marks a free generator
  std::vector<Int> source_gen_orders;    // per column; 0 marks a free generator
};

PresentedMapAnalysis analyze_presented_map(const SparseIntMatrix& P,
                                           const SparseIntMatrix& Q,
                                           const SparseIntMatrix& F,
                                           long long torsion_enum_cap = 1'000'000,
                                           bool validate_well_defined = true);

}  // namespace exactlin
}  // namespace homstab
