#include "homstab/exactlin.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace homstab::exactlin {

SparseIntMatrix::SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseIntMatrix: negative dimension");
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
  SparseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i][i] = 1;
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& d) {
  int r = static_cast<int>(d.size());
  int c = r == 0 ? 0 : static_cast<int>(d[0].size());
  SparseIntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(d[i].size()) != c)
      throw std::invalid_argument("from_dense: ragged rows");
    for (int j = 0; j < c; ++j)
      if (d[i][j] != 0) m.data_[i][j] = d[i][j];
  }
  return m;
}

Int SparseIntMatrix::get(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseIntMatrix::get: index out of bounds");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Int(0) : it->second;
}

void SparseIntMatrix::set(int r, int c, Int v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseIntMatrix::set: index out of bounds");
  if (v == 0)
    data_[r].erase(c);
  else
    data_[r][c] = std::move(v);
}

void SparseIntMatrix::add(int r, int c, const Int& v) {
  if (v == 0) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseIntMatrix::add: index out of bounds");
  auto it = data_[r].find(c);
  if (it == data_[r].end()) {
    data_[r][c] = v;
  } else {
    it->second += v;
    if (it->second == 0) data_[r].erase(it);
  }
}

std::vector<Int> SparseIntMatrix::column_vector(int c) const {
  if (c < 0 || c >= cols_) throw std::out_of_range("column_vector: bad column");
  std::vector<Int> out(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    auto it = data_[r].find(c);
    if (it != data_[r].end()) out[r] = it->second;
  }
  return out;
}

std::vector<Int> SparseIntMatrix::apply(const std::vector<Int>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
  std::vector<Int> out(rows_, 0);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r])
      if (x[c] != 0) out[r] += v * x[c];
  return out;
}

long long SparseIntMatrix::nnz() const {
  long long n = 0;
  for (const auto& row : data_) n += static_cast<long long>(row.size());
  return n;
}

bool SparseIntMatrix::is_zero() const {
  for (const auto& row : data_)
    if (!row.empty()) return false;
  return true;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c][r] = v;
  return t;
}

SparseIntMatrix SparseIntMatrix::hstack(const SparseIntMatrix& other) const {
  if (other.rows_ != rows_) throw std::invalid_argument("hstack: row mismatch");
  SparseIntMatrix m(rows_, cols_ + other.cols_);
  for (int r = 0; r < rows_; ++r) {
    m.data_[r] = data_[r];
    for (const auto& [c, v] : other.data_[r]) m.data_[r][cols_ + c] = v;
  }
  return m;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("operator*: dimension mismatch");
  SparseIntMatrix c(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (const auto& [k, v] : a.data_[r])
      for (const auto& [j, w] : b.data_[k]) c.add(r, j, v * w);
  }
  return c;
}

std::vector<std::vector<Int>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, 0));
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) d[r][c] = v;
  return d;
}

// ---------------------------------------------------------------------------
// Smith normal form engine: integer elimination with rounded-quotient
// reduction and a fill-limiting pivot order (see SnfEngine).
// ---------------------------------------------------------------------------

namespace {

Int round_div(const Int& a, const Int& b) {
  // quotient q with |a - q*b| <= |b|/2
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs(r) > abs(b)) {
    if ((r > 0) == (b > 0))
      ++q;
    else
      --q;
  }
  return q;
}

// Pivots are logical: rows and columns are never moved during elimination.
// Pivot choice: the active column of minimal current size (ties by index),
// and inside it the entry of minimal |value|, ties by smaller row size then
// row index. This is a Markowitz-style fill-limiting rule; any correct
// deterministic rule would do. The recorded pivots are permuted onto the
// diagonal at the end, the permutations folded into the transforms.
class SnfEngine {
 public:
  SnfEngine(const SparseIntMatrix& m, const SNFOptions& opt)
      : nr_(m.rows()), nc_(m.cols()), rows_(nr_), colrows_(nc_), opt_(opt),
        row_done_(nr_, 0), col_done_(nc_, 0) {
    for (int r = 0; r < nr_; ++r) {
      rows_[r].assign(m.row(r).begin(), m.row(r).end());
      for (const auto& [c, v] : rows_[r]) colrows_[c].push_back(r);
    }
    if (opt_.left) u_rows_.assign(nr_, {});
    if (opt_.left_inverse) uinv_cols_.assign(nr_, {});
    if (opt_.right) v_cols_.assign(nc_, {});
    if (opt_.right_inverse) vinv_rows_.assign(nc_, {});
    for (int i = 0; i < nr_; ++i) {
      if (opt_.left) u_rows_[i][i] = 1;
      if (opt_.left_inverse) uinv_cols_[i][i] = 1;
    }
    for (int i = 0; i < nc_; ++i) {
      if (opt_.right) v_cols_[i][i] = 1;
      if (opt_.right_inverse) vinv_rows_[i][i] = 1;
    }
  }

  SmithDecomposition run() {
    // Lazy priority queue of (column size, column). Fresh insertions feed it,
    // so a column that empties and later regains entries through fill-in is
    // never lost; stale sizes are re-pushed on pop.
    for (;;) {
      for (int c = 0; c < nc_; ++c) {
        if (col_done_[c]) continue;
        compact_column(c);
        if (!colrows_[c].empty())
          pq_.emplace(static_cast<long long>(colrows_[c].size()), c);
      }
      if (pq_.empty()) break;
      while (!pq_.empty()) {
        auto [size, c] = pq_.top();
        pq_.pop();
        if (col_done_[c]) continue;
        compact_column(c);
        if (colrows_[c].empty()) continue;
        if (static_cast<long long>(colrows_[c].size()) != size) {
          pq_.emplace(static_cast<long long>(colrows_[c].size()), c);
          continue;
        }
        int r = pick_row_in_column(c);
        auto [pr, pc] = eliminate(r, c);
        row_done_[pr] = 1;
        col_done_[pc] = 1;
        pivots_.emplace_back(pr, pc);
        if (pc != c) {
          compact_column(c);
          if (!colrows_[c].empty())
            pq_.emplace(static_cast<long long>(colrows_[c].size()), c);
        }
      }
      // a column can empty out and regain entries through fill-in after its
      // queue entry was discarded; the outer sweep picks those up
    }
    apply_final_permutation();
    int k = static_cast<int>(pivots_.size());
    for (int i = 0; i < k; ++i)
      if (value(i, i) < 0) row_negate(i);
    fix_divisibility();
    SmithDecomposition out;
    out.diagonal.reserve(k);
    for (int i = 0; i < k; ++i) out.diagonal.push_back(value(i, i));
    if (opt_.left) out.left = rows_to_matrix(u_rows_, nr_, nr_);
    if (opt_.left_inverse) out.left_inverse = cols_to_matrix(uinv_cols_, nr_, nr_);
    if (opt_.right) out.right = cols_to_matrix(v_cols_, nc_, nc_);
    if (opt_.right_inverse) out.right_inverse = rows_to_matrix(vinv_rows_, nc_, nc_);
    return out;
  }

 private:
  // rows are sparse vectors sorted by column; row operations are wholesale
  // two-pointer merges, which is what makes large eliminations affordable
  using Row = std::vector<std::pair<int, Int>>;

  int nr_, nc_;
  std::vector<Row> rows_;
  // column row-lists are lazy: they may hold stale or duplicate entries and
  // are compacted (filtered against the matrix, deduplicated) before use
  std::vector<std::vector<int>> colrows_;
  SNFOptions opt_;
  std::vector<std::map<int, Int>> u_rows_, uinv_cols_, v_cols_, vinv_rows_;
  std::vector<char> row_done_, col_done_;
  std::vector<std::pair<int, int>> pivots_;
  std::priority_queue<std::pair<long long, int>, std::vector<std::pair<long long, int>>,
                      std::greater<>> pq_;

  Int value(int r, int c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int key) { return e.first < key; });
    return (it != row.end() && it->first == c) ? it->second : Int(0);
  }

  int pick_row_in_column(int c) const {
    int best = -1;
    Int best_abs = 0;
    size_t best_size = 0;
    for (int r : colrows_[c]) {
      Int a = abs(value(r, c));
      size_t s = rows_[r].size();
      if (best < 0 || a < best_abs || (a == best_abs && s < best_size)) {
        best = r;
        best_abs = a;
        best_size = s;
      }
    }
    return best;
  }

  void note_insert(int r, int c) { colrows_[c].push_back(r); }

  void compact_column(int c) {
    auto& rows = colrows_[c];
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::erase_if(rows, [&](int r) { return value(r, c) == 0; });
  }

  // M: row_dst += q * row_src  (dst != src), by sorted merge
  void row_axpy(int dst, int src, const Int& q) {
    if (q == 0) return;
    Row& a = rows_[dst];
    const Row& b = rows_[src];
    Row merged;
    merged.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        merged.emplace_back(a[i].first, std::move(a[i].second));
        ++i;
      } else if (i == a.size() || b[j].first < a[i].first) {
        Int v = q * b[j].second;
        if (v != 0) {
          note_insert(dst, b[j].first);
          merged.emplace_back(b[j].first, std::move(v));
        }
        ++j;
      } else {
        Int v = std::move(a[i].second);
        v += q * b[j].second;
        if (v != 0) {
          merged.emplace_back(a[i].first, std::move(v));
        }  // cancelled entries just go stale in colrows_
        ++i;
        ++j;
      }
    }
    rows_[dst] = std::move(merged);
    if (opt_.left)
      for (const auto& [c, v] : u_rows_[src]) axpy_into(u_rows_[dst], c, q * v);
    if (opt_.left_inverse)
      for (const auto& [r, v] : uinv_cols_[dst]) axpy_into(uinv_cols_[src], r, -q * v);
  }

  // M: col_dst += q * col_src  (dst != src); cost is a binary search plus a
  // vector splice per affected row, fine for the narrow columns we keep
  void col_axpy(int dst, int src, const Int& q) {
    if (q == 0) return;
    compact_column(src);
    std::vector<int> src_rows = colrows_[src];
    for (int r : src_rows) set_entry(r, dst, value(r, dst) + q * value(r, src));
    if (opt_.right)
      for (const auto& [r, v] : v_cols_[src]) axpy_into(v_cols_[dst], r, q * v);
    if (opt_.right_inverse)
      for (const auto& [c, v] : vinv_rows_[dst]) axpy_into(vinv_rows_[src], c, -q * v);
  }

  void set_entry(int r, int c, Int v) {
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int key) { return e.first < key; });
    bool present = it != row.end() && it->first == c;
    if (v == 0) {
      if (present) row.erase(it);  // colrows_ entry goes stale
      return;
    }
    if (present) {
      it->second = std::move(v);
    } else {
      row.insert(it, {c, std::move(v)});
      note_insert(r, c);
    }
  }

  static void axpy_into(std::map<int, Int>& m, int key, const Int& delta) {
    if (delta == 0) return;
    auto it = m.find(key);
    if (it == m.end()) {
      m[key] = delta;
    } else {
      it->second += delta;
      if (it->second == 0) m.erase(it);
    }
  }

  void row_negate(int r) {
    for (auto& [c, v] : rows_[r]) v = -v;
    if (opt_.left)
      for (auto& [c, v] : u_rows_[r]) v = -v;
    if (opt_.left_inverse)
      for (auto& [k, v] : uinv_cols_[r]) v = -v;
  }

  // Clears the row and column through (r, c); the pivot may migrate to a
  // smaller remainder entry along the way. Returns the final position.
  std::pair<int, int> eliminate(int r, int c) {
    for (;;) {
      Int d = value(r, c);
      // clear column c with row merges
      bool residue = false;
      compact_column(c);
      std::vector<int> col_rows = colrows_[c];
      for (int rr : col_rows) {
        if (rr == r) continue;
        Int q = round_div(value(rr, c), d);
        row_axpy(rr, r, -q);
        if (value(rr, c) != 0) residue = true;
      }
      if (residue) {
        compact_column(c);
        int best = -1;
        Int best_abs = 0;
        for (int rr : colrows_[c]) {
          if (rr == r) continue;
          Int a = abs(value(rr, c));
          if (best < 0 || a < best_abs) {
            best = rr;
            best_abs = a;
          }
        }
        r = best;
        continue;
      }
      // clear row r; column c is now a singleton, so each column op touches
      // row r only and the whole phase is one row rebuild
      bool row_residue = false;
      {
        Row survivors;
        survivors.reserve(4);
        for (const auto& [cc, v] : rows_[r]) {
          if (cc == c) {
            survivors.emplace_back(cc, v);
            continue;
          }
          Int q = round_div(v, d);
          if (q != 0) {
            if (opt_.right)
              for (const auto& [rv, vv] : v_cols_[c]) axpy_into(v_cols_[cc], rv, -q * vv);
            if (opt_.right_inverse)
              for (const auto& [cv, vv] : vinv_rows_[cc]) axpy_into(vinv_rows_[c], cv, q * vv);
          }
          Int rem = v - q * d;
          if (rem != 0) {
            survivors.emplace_back(cc, std::move(rem));
            row_residue = true;
          }  // dead entries leave stale colrows_ references
        }
        rows_[r] = std::move(survivors);
      }
      if (row_residue) {
        int best = -1;
        Int best_abs = 0;
        for (const auto& [cc, v] : rows_[r]) {
          if (cc == c) continue;
          Int a = abs(v);
          if (best < 0 || a < best_abs) {
            best = cc;
            best_abs = a;
          }
        }
        c = best;
        continue;
      }
      return {r, c};
    }
  }

  // Move pivot i to position (i, i) by row/column permutations, folded into
  // the transforms. After elimination the matrix holds only pivot entries,
  // so the data rebuild is cheap.
  void apply_final_permutation() {
    int k = static_cast<int>(pivots_.size());
    std::vector<int> row_order, col_order;
    row_order.reserve(nr_);
    col_order.reserve(nc_);
    for (auto& [pr, pc] : pivots_) {
      row_order.push_back(pr);
      col_order.push_back(pc);
    }
    for (int r = 0; r < nr_; ++r)
      if (!row_done_[r]) row_order.push_back(r);
    for (int c = 0; c < nc_; ++c)
      if (!col_done_[c]) col_order.push_back(c);

    std::vector<Int> diag_values(k);
    for (int i = 0; i < k; ++i) diag_values[i] = value(pivots_[i].first, pivots_[i].second);
    rows_.assign(nr_, {});
    colrows_.assign(nc_, {});
    for (int i = 0; i < k; ++i) {
      rows_[i].emplace_back(i, diag_values[i]);
      colrows_[i].push_back(i);
    }
    if (opt_.left) permute(u_rows_, row_order);
    if (opt_.left_inverse) permute(uinv_cols_, row_order);
    if (opt_.right) permute(v_cols_, col_order);
    if (opt_.right_inverse) permute(vinv_rows_, col_order);
  }

  static void permute(std::vector<std::map<int, Int>>& data, const std::vector<int>& order) {
    std::vector<std::map<int, Int>> next(data.size());
    for (size_t i = 0; i < order.size(); ++i) next[i] = std::move(data[order[i]]);
    data = std::move(next);
  }

  // generic column swap, used only in the divisibility fixup where the
  // matrix is already diagonal
  void col_swap(int a, int b) {
    if (a == b) return;
    compact_column(a);
    compact_column(b);
    std::set<int> affected;
    for (int r : colrows_[a]) affected.insert(r);
    for (int r : colrows_[b]) affected.insert(r);
    for (int r : affected) {
      Int va = value(r, a), vb = value(r, b);
      set_entry(r, a, 0);
      set_entry(r, b, 0);
      if (vb != 0) set_entry(r, a, vb);
      if (va != 0) set_entry(r, b, va);
    }
    if (opt_.right) std::swap(v_cols_[a], v_cols_[b]);
    if (opt_.right_inverse) std::swap(vinv_rows_[a], vinv_rows_[b]);
  }

  // Enforce d_i | d_{i+1} on the diagonal by 2x2 unimodular fixups.
  void fix_divisibility() {
    int k = static_cast<int>(pivots_.size());
    if (k <= 1) return;
    bool changed = true;
    int guard = 0;
    while (changed) {
      changed = false;
      if (++guard > k * k + 8)
        throw std::logic_error("snf: divisibility fixup failed to converge");
      for (int i = 0; i + 1 < k; ++i) {
        Int a = value(i, i), b = value(i + 1, i + 1);
        if (b % a == 0) continue;
        changed = true;
        int j = i + 1;
        row_axpy(i, j, 1);  // M[i][j] = b now
        for (;;) {
          Int vii = value(i, i), vij = value(i, j);
          if (vij == 0) break;
          if (vii == 0) {
            col_swap(i, j);
            continue;
          }
          if (abs(vij) >= abs(vii)) {
            col_axpy(j, i, -round_div(vij, vii));
          } else {
            col_swap(i, j);
          }
        }
        Int g = value(i, i);
        Int vji = value(j, i);
        assert(vji % g == 0);
        row_axpy(j, i, -vji / g);
        if (value(i, i) < 0) row_negate(i);
        if (value(j, j) < 0) row_negate(j);
      }
    }
  }

  static SparseIntMatrix rows_to_matrix(const std::vector<std::map<int, Int>>& rows, int nr,
                                        int nc) {
    SparseIntMatrix m(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    return m;
  }

  static SparseIntMatrix cols_to_matrix(const std::vector<std::map<int, Int>>& cols, int nr,
                                        int nc) {
    SparseIntMatrix m(nr, nc);
    for (int c = 0; c < nc; ++c)
      for (const auto& [r, v] : cols[c]) m.set(r, c, v);
    return m;
  }
};

}  // namespace

SmithDecomposition smith_decompose(const SparseIntMatrix& m, const SNFOptions& opt) {
  bool transforms = opt.left || opt.left_inverse || opt.right || opt.right_inverse;
  if (!transforms && m.rows() < m.cols()) {
    // diagonal-only runs may transpose freely (the diagonal is invariant);
    // the orientation with many short rows keeps the merges cheap
    SnfEngine engine(m.transpose(), opt);
    return engine.run();
  }
  SnfEngine engine(m, opt);
  return engine.run();
}

SNFResult snf(const SparseIntMatrix& m) {
  auto d = smith_decompose(m, SNFOptions{.left = true, .right = true});
  return SNFResult{std::move(d.diagonal), std::move(*d.left), std::move(*d.right)};
}

std::vector<Int> snf_diagonal(const SparseIntMatrix& m) {
  return smith_decompose(m).diagonal;
}

int rank(const SparseIntMatrix& m) { return static_cast<int>(snf_diagonal(m).size()); }

Int determinant(const SparseIntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  int n = m.rows();
  if (n == 0) return 1;
  auto a = m.to_dense();
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          p = r;
          break;
        }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Abelian group bookkeeping
// ---------------------------------------------------------------------------

std::optional<Int> AbelianGroup::order() const {
  if (free_rank > 0) return std::nullopt;
  Int o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

std::string AbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank > 1) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianGroup from_cyclic_orders(long long free_rank, std::vector<Int> orders) {
  // factor every order into prime powers, regroup as invariant factors
  std::map<Int, std::vector<Int>> powers;  // prime -> list of prime powers
  for (Int d : orders) {
    if (d < 0) d = -d;
    if (d <= 1) continue;
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p == 0) {
        Int pk = 1;
        while (d % p == 0) {
          pk *= p;
          d /= p;
        }
        powers[p].push_back(pk);
      }
    }
    if (d > 1) powers[d].push_back(d);
  }
  size_t count = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<Int>());
    count = std::max(count, v.size());
  }
  std::vector<Int> inv(count, 1);
  for (auto& [p, v] : powers)
    for (size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
  std::sort(inv.begin(), inv.end());  // ascending divisibility chain
  return AbelianGroup{free_rank, std::move(inv)};
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Int> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  return from_cyclic_orders(a.free_rank + b.free_rank, std::move(orders));
}

AbelianGroup tensor_product(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Int> orders;
  for (const auto& d : a.torsion)
    for (const auto& e : b.torsion) orders.push_back(gcd(d, e));
  for (const auto& d : a.torsion)
    for (long long i = 0; i < b.free_rank; ++i) orders.push_back(d);
  for (const auto& e : b.torsion)
    for (long long i = 0; i < a.free_rank; ++i) orders.push_back(e);
  return from_cyclic_orders(a.free_rank * b.free_rank, std::move(orders));
}

AbelianGroup tor_product(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Int> orders;
  for (const auto& d : a.torsion)
    for (const auto& e : b.torsion) orders.push_back(gcd(d, e));
  return from_cyclic_orders(0, std::move(orders));
}

AbelianGroup quotient_structure(const SparseIntMatrix& A, const SparseIntMatrix& B) {
  if (A.cols() != B.rows())
    throw std::invalid_argument("quotient_structure: A and B not composable");
  if (!(A * B).is_zero())
    throw std::invalid_argument("quotient_structure: A*B != 0");
  int ra = rank(A);
  auto db = snf_diagonal(B);
  long long free_rank = static_cast<long long>(A.cols()) - ra - static_cast<long long>(db.size());
  std::vector<Int> torsion;
  for (const auto& d : db)
    if (d > 1) torsion.push_back(d);
  return AbelianGroup{free_rank, std::move(torsion)};
}

AbelianGroup cokernel_structure(int ambient_rank, const SparseIntMatrix& B) {
  if (B.rows() != ambient_rank)
    throw std::invalid_argument("cokernel_structure: rank mismatch");
  auto db = snf_diagonal(B);
  long long free_rank = ambient_rank - static_cast<long long>(db.size());
  std::vector<Int> torsion;
  for (const auto& d : db)
    if (d > 1) torsion.push_back(d);
  return AbelianGroup{free_rank, std::move(torsion)};
}

ImageMembership::ImageMembership(const SparseIntMatrix& B) : ambient_(B.rows()) {
  auto d = smith_decompose(B, SNFOptions{.left = true});
  u_ = std::move(*d.left);
  diagonal_ = std::move(d.diagonal);
}

bool ImageMembership::contains(const std::vector<Int>& z) const {
  if (static_cast<int>(z.size()) != ambient_)
    throw std::invalid_argument("ImageMembership: size mismatch");
  std::vector<Int> w = u_.apply(z);
  int k = static_cast<int>(diagonal_.size());
  for (int i = 0; i < ambient_; ++i) {
    if (i < k) {
      if (w[i] % diagonal_[i] != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presented abelian group maps
// ---------------------------------------------------------------------------

namespace {

struct AdaptedPresentation {
  AbelianGroup type;
  // generator description in SNF coordinates of the presentation
  std::vector<int> gen_snf_index;  // position in the SNF basis
  std::vector<Int> gen_orders;     // 0 = free generator
  SparseIntMatrix u;               // SNF left transform of P
  std::optional<SparseIntMatrix> u_inv;
  int ambient = 0;
};

AdaptedPresentation adapt(const SparseIntMatrix& P, bool need_generators) {
  AdaptedPresentation out;
  out.ambient = P.rows();
  SNFOptions opt{.left = true, .left_inverse = need_generators};
  auto d = smith_decompose(P, opt);
  out.u = std::move(*d.left);
  if (need_generators) out.u_inv = std::move(*d.left_inverse);
  int k = static_cast<int>(d.diagonal.size());
  std::vector<Int> torsion;
  for (int i = 0; i < k; ++i) {
    if (d.diagonal[i] > 1) {
      out.gen_snf_index.push_back(i);
      out.gen_orders.push_back(d.diagonal[i]);
      torsion.push_back(d.diagonal[i]);
    }
  }
  for (int i = k; i < out.ambient; ++i) {
    out.gen_snf_index.push_back(i);
    out.gen_orders.push_back(0);
  }
  out.type = AbelianGroup{out.ambient - k, std::move(torsion)};
  return out;
}

// symmetric remainder in [0, d)
Int positive_mod(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

}  // namespace

PresentedMapAnalysis analyze_presented_map(const SparseIntMatrix& P, const SparseIntMatrix& Q,
                                           const SparseIntMatrix& F, long long torsion_enum_cap,
                                           bool validate_well_defined) {
  int a = P.rows(), b = Q.rows();
  if (F.cols() != a || F.rows() != b)
    throw std::invalid_argument("analyze_presented_map: F has wrong shape");

  PresentedMapAnalysis out;
  auto src = adapt(P, /*need_generators=*/true);
  auto tgt = adapt(Q, /*need_generators=*/false);
  out.source = src.type;
  out.target = tgt.type;
  out.source_gen_orders = src.gen_orders;
  out.target_gen_orders = tgt.gen_orders;

  ImageMembership q_membership(Q);
  if (validate_well_defined) {
    for (int j = 0; j < P.cols(); ++j) {
      if (!q_membership.contains(F.apply(P.column_vector(j))))
        throw std::invalid_argument("analyze_presented_map: F does not map im(P) into im(Q)");
    }
  }

  // map matrix on adapted generators, reduced mod target orders
  int ns = static_cast<int>(src.gen_snf_index.size());
  int nt = static_cast<int>(tgt.gen_snf_index.size());
  out.matrix_on_generators = SparseIntMatrix(nt, ns);
  std::vector<std::vector<Int>> src_gen_vectors(ns);
  for (int j = 0; j < ns; ++j) {
    src_gen_vectors[j] = src.u_inv->column_vector(src.gen_snf_index[j]);
    std::vector<Int> img = tgt.u.apply(F.apply(src_gen_vectors[j]));
    for (int i = 0; i < nt; ++i) {
      Int coord = img[tgt.gen_snf_index[i]];
      if (tgt.gen_orders[i] != 0) coord = positive_mod(coord, tgt.gen_orders[i]);
      out.matrix_on_generators.set(i, j, coord);
    }
  }

  // surjectivity: Z^b = im(F) + im(Q)
  auto fq = F.hstack(Q);
  auto fq_diag = snf_diagonal(fq);
  {
    bool onto = static_cast<int>(fq_diag.size()) == b;
    for (const auto& d : fq_diag)
      if (d != 1) onto = false;
    out.surjective = onto;
    long long coker_free = b - static_cast<long long>(fq_diag.size());
    std::vector<Int> coker_tors;
    for (const auto& d : fq_diag)
      if (d > 1) coker_tors.push_back(d);
    out.cokernel = AbelianGroup{coker_free, std::move(coker_tors)};
  }

  // injectivity: free parts via rank count, torsion subgroup by enumeration
  {
    long long rank_fq = static_cast<long long>(fq_diag.size());
    long long rank_q = rank(Q);
    bool free_ok = (rank_fq - rank_q) == out.source.free_rank;
    bool torsion_ok = true;
    if (free_ok) {
      Int total = 1;
      for (const auto& d : out.source.torsion) total *= d;
      if (total > torsion_enum_cap)
        throw ResourceCapError("analyze_presented_map: torsion enumeration above cap (" +
                               total.str() + ")");
      // iterate coefficient tuples over the torsion generators
      std::vector<int> torsion_gen_idx;
      for (int j = 0; j < ns; ++j)
        if (src.gen_orders[j] != 0) torsion_gen_idx.push_back(j);
      std::vector<Int> coeff(torsion_gen_idx.size(), 0);
      auto bump = [&]() -> bool {
        for (size_t i = 0; i < coeff.size(); ++i) {
          coeff[i] += 1;
          if (coeff[i] < src.gen_orders[torsion_gen_idx[i]]) return true;
          coeff[i] = 0;
        }
        return false;
      };
      if (!torsion_gen_idx.empty()) {
        while (bump()) {
          std::vector<Int> x(a, 0);
          for (size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i] == 0) continue;
            const auto& g = src_gen_vectors[torsion_gen_idx[i]];
            for (int r = 0; r < a; ++r) x[r] += coeff[i] * g[r];
          }
          if (q_membership.contains(F.apply(x))) {
            torsion_ok = false;
            break;
          }
        }
      }
    }
    out.injective = free_ok && torsion_ok;
  }
  return out;
}

}  // namespace homstab::exactlin
