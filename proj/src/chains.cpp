#include "homstab/chains.hpp"

#include <stdexcept>
#include <string>

namespace homstab::chains {

using exactlin::smith_decompose;
using exactlin::SNFOptions;

namespace {

SparseIntMatrix zero_matrix(long long rows, long long cols) {
  return SparseIntMatrix(static_cast<int>(rows), static_cast<int>(cols));
}

}  // namespace

SparseIntMatrix ChainComplex::boundary_or_zero(int p) const {
  if (p >= 1 && p <= top_degree() && p < static_cast<int>(boundary.size())) return boundary[p];
  return zero_matrix(dim(p - 1), dim(p));
}

void ChainComplex::validate() const {
  if (boundary.size() != dims.size())
    throw std::invalid_argument("ChainComplex: boundary list size mismatch");
  for (int p = 1; p <= top_degree(); ++p) {
    if (boundary[p].rows() != dims[p - 1] || boundary[p].cols() != dims[p])
      throw std::invalid_argument("ChainComplex: boundary[" + std::to_string(p) +
                                  "] has wrong shape");
    if (p >= 2 && !(boundary[p - 1] * boundary[p]).is_zero())
      throw std::invalid_argument("ChainComplex: boundary^2 != 0 at degree " + std::to_string(p));
  }
}

AbelianGroup ChainComplex::homology(int p) const {
  if (p < 0 || p > top_degree()) return AbelianGroup{};
  long long np = dim(p);
  long long rank_p = 0;
  if (p >= 1 && dim(p - 1) > 0) rank_p = exactlin::rank(boundary[p]);
  std::vector<Int> dnext;
  if (p + 1 <= top_degree()) dnext = exactlin::snf_diagonal(boundary[p + 1]);
  std::vector<Int> torsion;
  for (const auto& d : dnext)
    if (d > 1) torsion.push_back(d);
  return AbelianGroup{np - rank_p - static_cast<long long>(dnext.size()), std::move(torsion)};
}

SparseIntMatrix ChainMap::map_or_zero(int p, long long rows, long long cols) const {
  if (p >= 0 && p < static_cast<int>(maps.size()) &&
      (maps[p].rows() != 0 || maps[p].cols() != 0))
    return maps[p];
  return zero_matrix(rows, cols);
}

void validate_chain_map(const ChainComplex& x, const ChainComplex& y, const ChainMap& f) {
  int top = std::max(x.top_degree(), y.top_degree());
  for (int p = 0; p <= top; ++p) {
    auto fp = f.map_or_zero(p, y.dim(p), x.dim(p));
    if (fp.rows() != y.dim(p) || fp.cols() != x.dim(p))
      throw std::invalid_argument("chain map: degree " + std::to_string(p) + " has wrong shape");
    if (p >= 1) {
      auto fprev = f.map_or_zero(p - 1, y.dim(p - 1), x.dim(p - 1));
      if (!(y.boundary_or_zero(p) * fp == fprev * x.boundary_or_zero(p)))
        throw std::invalid_argument("chain map: does not commute with boundary at degree " +
                                    std::to_string(p));
    }
  }
}

namespace {

// Kernel-adapted coordinates for degree p of a complex: a basis K of
// ker(boundary_p) as columns, and a coordinate extractor R with R*K = I.
struct KernelCoords {
  SparseIntMatrix basis;   // n_p x k
  SparseIntMatrix coords;  // k x n_p
  long long k = 0;
};

KernelCoords kernel_coords(const ChainComplex& c, int p) {
  KernelCoords out;
  long long np = c.dim(p);
  auto bp = c.boundary_or_zero(p);
  if (bp.is_zero()) {
    out.basis = SparseIntMatrix::identity(static_cast<int>(np));
    out.coords = out.basis;
    out.k = np;
    return out;
  }
  auto dec = smith_decompose(bp, SNFOptions{.right = true, .right_inverse = true});
  int r = dec.rank();
  int n = static_cast<int>(np);
  out.k = np - r;
  out.basis = SparseIntMatrix(n, static_cast<int>(out.k));
  out.coords = SparseIntMatrix(static_cast<int>(out.k), n);
  for (int j = r; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      auto v = dec.right->get(i, j);
      if (v != 0) out.basis.set(i, j - r, v);
      auto w = dec.right_inverse->get(j, i);
      if (w != 0) out.coords.set(j - r, i, w);
    }
  }
  return out;
}

}  // namespace

exactlin::PresentedMapAnalysis homology_map(const ChainComplex& x, const ChainComplex& y,
                                            const ChainMap& f, int p,
                                            long long torsion_enum_cap) {
  auto kx = kernel_coords(x, p);
  auto ky = kernel_coords(y, p);
  // presentations of H_p as Z^k / im(coords * boundary_{p+1})
  auto px = kx.coords * x.boundary_or_zero(p + 1);
  auto py = ky.coords * y.boundary_or_zero(p + 1);
  auto fp = f.map_or_zero(p, y.dim(p), x.dim(p));
  auto fker = ky.coords * (fp * kx.basis);
  return exactlin::analyze_presented_map(px, py, fker, torsion_enum_cap);
}

ChainComplex mapping_cone(const ChainComplex& a, const ChainComplex& x, const ChainMap& f) {
  int top = std::max(a.top_degree() + 1, x.top_degree());
  ChainComplex cone;
  cone.dims.assign(top + 1, 0);
  cone.boundary.assign(top + 1, SparseIntMatrix());
  for (int p = 0; p <= top; ++p) cone.dims[p] = a.dim(p - 1) + x.dim(p);
  for (int p = 1; p <= top; ++p) {
    SparseIntMatrix b(static_cast<int>(cone.dims[p - 1]), static_cast<int>(cone.dims[p]));
    long long a_rows = a.dim(p - 2);
    long long a_cols = a.dim(p - 1);
    // block (-boundary_A, 0; -f, boundary_X)
    auto ba = a.boundary_or_zero(p - 1);
    for (int r = 0; r < ba.rows(); ++r)
      for (const auto& [c, v] : ba.row(r)) b.set(r, c, -v);
    auto fp = f.map_or_zero(p - 1, x.dim(p - 1), a.dim(p - 1));
    for (int r = 0; r < fp.rows(); ++r)
      for (const auto& [c, v] : fp.row(r)) b.set(static_cast<int>(a_rows) + r, c, -v);
    auto bx = x.boundary_or_zero(p);
    for (int r = 0; r < bx.rows(); ++r)
      for (const auto& [c, v] : bx.row(r))
        b.set(static_cast<int>(a_rows) + r, static_cast<int>(a_cols) + c, v);
    cone.boundary[p] = std::move(b);
  }
  cone.validate();
  return cone;
}

}  // namespace homstab::chains
