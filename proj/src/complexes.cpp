#include "homstab/complexes.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace homstab::complexes {

namespace {

std::string simplex_name(int p, int i) {
  return "(" + std::to_string(p) + "," + std::to_string(i) + ")";
}

}  // namespace

DeltaComplex DeltaComplex::build(int vertex_count,
                                 std::vector<std::vector<std::vector<int>>> higher_cells) {
  if (vertex_count < 0) throw std::invalid_argument("DeltaComplex: negative vertex count");
  DeltaComplex x;
  if (vertex_count == 0) {
    for (const auto& level : higher_cells)
      if (!level.empty())
        throw std::invalid_argument("DeltaComplex: simplices without vertices");
    return x;
  }
  x.cells_.emplace_back(vertex_count);
  for (auto& level : higher_cells) x.cells_.push_back(std::move(level));
  while (x.cells_.size() > 1 && x.cells_.back().empty()) x.cells_.pop_back();
  x.validate_and_index();
  return x;
}

DeltaComplex DeltaComplex::single_point() { return build(1, {}); }

int DeltaComplex::simplex_count(int p) const {
  if (p < 0 || p > dimension()) return 0;
  return static_cast<int>(cells_[p].size());
}

long long DeltaComplex::total_simplices() const {
  long long t = 0;
  for (const auto& level : cells_) t += static_cast<long long>(level.size());
  return t;
}

const std::vector<int>& DeltaComplex::faces(int p, int i) const {
  if (p < 1 || p > dimension() || i < 0 || i >= simplex_count(p))
    throw std::out_of_range("DeltaComplex::faces: no simplex " + simplex_name(p, i));
  return cells_[p][i];
}

const std::vector<int>& DeltaComplex::vertices_of(int p, int i) const {
  if (p < 0 || p > dimension() || i < 0 || i >= simplex_count(p))
    throw std::out_of_range("DeltaComplex::vertices_of: no simplex " + simplex_name(p, i));
  return vertex_tables_[p][i];
}

std::optional<int> DeltaComplex::simplex_with_faces(int p,
                                                    const std::vector<int>& face_tuple) const {
  if (p < 1 || p > dimension()) return std::nullopt;
  int found = -1;
  for (int i = 0; i < simplex_count(p); ++i) {
    if (cells_[p][i] == face_tuple) {
      if (found >= 0)
        throw std::invalid_argument("DeltaComplex: ambiguous face tuple in dimension " +
                                    std::to_string(p));
      found = i;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

void DeltaComplex::validate_and_index() {
  for (int p = 1; p <= dimension(); ++p) {
    for (int i = 0; i < simplex_count(p); ++i) {
      const auto& f = cells_[p][i];
      if (static_cast<int>(f.size()) != p + 1)
        throw std::invalid_argument("DeltaComplex: simplex " + simplex_name(p, i) + " has " +
                                    std::to_string(f.size()) + " faces, expected " +
                                    std::to_string(p + 1));
      for (int idx : f)
        if (idx < 0 || idx >= simplex_count(p - 1))
          throw std::invalid_argument("DeltaComplex: simplex " + simplex_name(p, i) +
                                      " has face index out of range");
    }
  }
  // simplicial identities d_i d_j = d_{j-1} d_i for i < j
  for (int p = 2; p <= dimension(); ++p) {
    for (int s = 0; s < simplex_count(p); ++s) {
      const auto& f = cells_[p][s];
      for (int j = 1; j <= p; ++j)
        for (int i = 0; i < j; ++i) {
          int left = cells_[p - 1][f[j]][i];
          int right = cells_[p - 1][f[i]][j - 1];
          if (left != right)
            throw std::invalid_argument("DeltaComplex: simplicial identity fails at simplex " +
                                        simplex_name(p, s) + " (i=" + std::to_string(i) +
                                        ", j=" + std::to_string(j) + ")");
        }
    }
  }
  // vertex tables: vertex j of s = iterated faces; first p vertices from d_p,
  // last vertex from d_0^p
  vertex_tables_.assign(cells_.size(), {});
  if (dimension() >= 0) {
    vertex_tables_[0].resize(simplex_count(0));
    for (int v = 0; v < simplex_count(0); ++v) vertex_tables_[0][v] = {v};
  }
  for (int p = 1; p <= dimension(); ++p) {
    vertex_tables_[p].resize(simplex_count(p));
    for (int i = 0; i < simplex_count(p); ++i) {
      const auto& f = cells_[p][i];
      std::vector<int> verts = vertex_tables_[p - 1][f[p]];  // drops the last vertex
      verts.push_back(vertex_tables_[p - 1][f[0]].back());   // d_0 keeps the tail
      vertex_tables_[p][i] = std::move(verts);
    }
  }
}

chains::ChainComplex DeltaComplex::chain_complex() const {
  chains::ChainComplex c;
  if (empty()) return c;
  int d = dimension();
  c.dims.resize(d + 1);
  c.boundary.resize(d + 1);
  for (int p = 0; p <= d; ++p) c.dims[p] = simplex_count(p);
  for (int p = 1; p <= d; ++p) c.boundary[p] = boundary_matrix(*this, p);
  return c;
}

SparseIntMatrix DeltaComplex::augmentation() const {
  SparseIntMatrix a(1, vertex_count());
  for (int v = 0; v < vertex_count(); ++v) a.set(0, v, 1);
  return a;
}

SparseIntMatrix boundary_matrix(const DeltaComplex& x, int p) {
  if (p < 1) throw std::invalid_argument("boundary_matrix: p must be >= 1");
  SparseIntMatrix m(x.simplex_count(p - 1), x.simplex_count(p));
  for (int i = 0; i < x.simplex_count(p); ++i) {
    const auto& f = x.faces(p, i);
    for (int j = 0; j <= p; ++j) m.add(f[j], i, (j % 2 == 0) ? 1 : -1);
  }
  return m;
}

HomologyProfile homology(const DeltaComplex& x, bool reduced) {
  if (reduced && x.empty())
    throw std::invalid_argument("homology: reduced homology needs a nonempty complex");
  HomologyProfile prof;
  prof.reduced = reduced;
  if (x.empty()) return prof;
  auto cc = x.chain_complex();
  int d = x.dimension();
  prof.groups.resize(d + 1);
  for (int p = 1; p <= d; ++p) prof.groups[p] = cc.homology(p);
  if (reduced) {
    // H~_0 = ker(augmentation) / im(boundary_1)
    auto b1 = d >= 1 ? boundary_matrix(x, 1) : SparseIntMatrix(x.vertex_count(), 0);
    prof.groups[0] = exactlin::quotient_structure(x.augmentation(), b1);
  } else {
    prof.groups[0] = cc.homology(0);
  }
  return prof;
}

bool HomologyProfile::all_trivial() const {
  for (const auto& g : groups)
    if (!g.trivial()) return false;
  return true;
}

std::string HomologyProfile::to_string() const {
  std::ostringstream os;
  for (size_t p = 0; p < groups.size(); ++p) {
    if (p) os << "; ";
    os << (reduced ? "H~_" : "H_") << p << " = " << groups[p].to_string();
  }
  if (groups.empty()) os << "(empty complex)";
  return os.str();
}

bool is_n_spherical(const DeltaComplex& x, int n) {
  if (x.empty()) throw std::invalid_argument("is_n_spherical: empty complex");
  auto prof = homology(x, /*reduced=*/true);
  for (int p = 0; p < static_cast<int>(prof.groups.size()); ++p)
    if (p != n && !prof.groups[p].trivial()) return false;
  return true;
}

DeltaComplex join_with_finite_set(const DeltaComplex& x, int m) {
  if (m < 1) throw std::invalid_argument("join_with_finite_set: m must be >= 1");
  if (x.empty()) throw std::invalid_argument("join_with_finite_set: empty complex");
  int d = x.dimension();
  int nv = x.vertex_count();
  // Index layout per join dimension p: old p-simplices first, then the
  // joined simplices (old (p-1)-simplex, new vertex v) in (simplex, v)
  // order. The new vertex is appended last, so d_p recovers the old simplex.
  // pair_index(dim, s, v) locates the pair (s, v) inside join dimension dim.
  auto pair_index = [&](int dim, int old_simplex, int v) {
    return x.simplex_count(dim) + old_simplex * m + v;
  };
  std::vector<std::vector<std::vector<int>>> higher(d + 1);  // dimensions 1..d+1
  for (int p = 1; p <= d + 1; ++p) {
    std::vector<std::vector<int>> level;
    if (p <= d)
      for (int i = 0; i < x.simplex_count(p); ++i) level.push_back(x.faces(p, i));
    for (int i = 0; i < x.simplex_count(p - 1); ++i) {
      for (int v = 0; v < m; ++v) {
        std::vector<int> f(p + 1);
        if (p == 1) {
          f[0] = nv + v;  // d_0 drops the old vertex, leaving the new one
          f[1] = i;
        } else {
          const auto& old_faces = x.faces(p - 1, i);
          for (int j = 0; j <= p - 1; ++j) f[j] = pair_index(p - 1, old_faces[j], v);
          f[p] = i;
        }
        level.push_back(std::move(f));
      }
    }
    higher[p - 1] = std::move(level);
  }
  return DeltaComplex::build(nv + m, std::move(higher));
}

Subcomplex Subcomplex::empty_like(const DeltaComplex& x) {
  Subcomplex s;
  s.member.resize(x.dimension() + 1);
  for (int p = 0; p <= x.dimension(); ++p) s.member[p].assign(x.simplex_count(p), 0);
  return s;
}

Subcomplex Subcomplex::full_like(const DeltaComplex& x) {
  Subcomplex s = empty_like(x);
  for (auto& level : s.member) std::fill(level.begin(), level.end(), 1);
  return s;
}

bool Subcomplex::contains(int p, int i) const {
  return p >= 0 && p < static_cast<int>(member.size()) && i >= 0 &&
         i < static_cast<int>(member[p].size()) && member[p][i];
}

void Subcomplex::insert(int p, int i) { member[p][i] = 1; }

long long Subcomplex::size() const {
  long long t = 0;
  for (const auto& level : member) t += std::count(level.begin(), level.end(), 1);
  return t;
}

Subcomplex face_closure(const DeltaComplex& x, const Subcomplex& seed) {
  Subcomplex s = seed;
  s.member.resize(x.dimension() + 1);
  for (int p = 0; p <= x.dimension(); ++p) s.member[p].resize(x.simplex_count(p), 0);
  for (int p = x.dimension(); p >= 1; --p)
    for (int i = 0; i < x.simplex_count(p); ++i)
      if (s.member[p][i])
        for (int f : x.faces(p, i)) s.member[p - 1][f] = 1;
  return s;
}

bool is_face_closed(const DeltaComplex& x, const Subcomplex& s) {
  if (static_cast<int>(s.member.size()) != x.dimension() + 1) return false;
  for (int p = 0; p <= x.dimension(); ++p)
    if (static_cast<int>(s.member[p].size()) != x.simplex_count(p)) return false;
  for (int p = 1; p <= x.dimension(); ++p)
    for (int i = 0; i < x.simplex_count(p); ++i)
      if (s.member[p][i])
        for (int f : x.faces(p, i))
          if (!s.member[p - 1][f]) return false;
  return true;
}

Subcomplex subcomplex_intersection(const std::vector<Subcomplex>& parts) {
  if (parts.empty()) throw std::invalid_argument("subcomplex_intersection: no parts");
  Subcomplex out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].member.size() != out.member.size())
      throw std::invalid_argument("subcomplex_intersection: mismatched parents");
    for (size_t p = 0; p < out.member.size(); ++p)
      for (size_t i = 0; i < out.member[p].size(); ++i)
        out.member[p][i] = out.member[p][i] && parts[k].member[p][i];
  }
  return out;
}

Subcomplex subcomplex_union(const std::vector<Subcomplex>& parts) {
  if (parts.empty()) throw std::invalid_argument("subcomplex_union: no parts");
  Subcomplex out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].member.size() != out.member.size())
      throw std::invalid_argument("subcomplex_union: mismatched parents");
    for (size_t p = 0; p < out.member.size(); ++p)
      for (size_t i = 0; i < out.member[p].size(); ++i)
        out.member[p][i] = out.member[p][i] || parts[k].member[p][i];
  }
  return out;
}

ExtractedComplex extract(const DeltaComplex& x, const Subcomplex& s) {
  if (!is_face_closed(x, s)) throw std::invalid_argument("extract: subcomplex not face-closed");
  ExtractedComplex out;
  out.old_to_new.resize(x.dimension() + 1);
  std::vector<int> counts(x.dimension() + 1, 0);
  for (int p = 0; p <= x.dimension(); ++p) {
    out.old_to_new[p].assign(x.simplex_count(p), -1);
    for (int i = 0; i < x.simplex_count(p); ++i)
      if (s.member[p][i]) out.old_to_new[p][i] = counts[p]++;
  }
  std::vector<std::vector<std::vector<int>>> higher;
  for (int p = 1; p <= x.dimension(); ++p) {
    std::vector<std::vector<int>> level;
    for (int i = 0; i < x.simplex_count(p); ++i) {
      if (!s.member[p][i]) continue;
      std::vector<int> f = x.faces(p, i);
      for (int& idx : f) idx = out.old_to_new[p - 1][idx];
      level.push_back(std::move(f));
    }
    higher.push_back(std::move(level));
  }
  out.complex = DeltaComplex::build(counts.empty() ? 0 : counts[0], std::move(higher));
  return out;
}

DeltaComplex intersect_subcomplexes(const DeltaComplex& x, const std::vector<Subcomplex>& parts) {
  for (const auto& part : parts)
    if (!is_face_closed(x, part))
      throw std::invalid_argument("intersect_subcomplexes: part not face-closed");
  return extract(x, subcomplex_intersection(parts)).complex;
}

CoverSphericityReport verify_cover_sphericity(const DeltaComplex& x,
                                              const std::vector<Subcomplex>& cover, int n) {
  if (cover.empty()) throw std::invalid_argument("verify_cover_sphericity: empty cover");
  for (const auto& part : cover)
    if (!is_face_closed(x, part))
      throw std::invalid_argument("verify_cover_sphericity: cover piece not face-closed");
  CoverSphericityReport rep;
  rep.n = n;
  rep.union_covers = subcomplex_union(cover) == Subcomplex::full_like(x);
  if (!rep.union_covers)
    throw std::invalid_argument("verify_cover_sphericity: cover does not cover the complex");
  rep.hypotheses_hold = true;
  int m = static_cast<int>(cover.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    CoverIntersectionRecord rec;
    std::vector<Subcomplex> chosen;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        rec.indices.push_back(i);
        chosen.push_back(cover[i]);
      }
    int k = static_cast<int>(rec.indices.size());
    auto inter = extract(x, subcomplex_intersection(chosen)).complex;
    rec.must_be_empty = (k >= n + 2);
    if (rec.must_be_empty) {
      rec.ok = inter.empty();
      rec.detail = inter.empty() ? "empty as required"
                                 : "expected empty, found " +
                                       std::to_string(inter.total_simplices()) + " simplices";
    } else {
      int want = n - k + 1;
      if (inter.empty()) {
        rec.ok = false;
        rec.detail = "expected " + std::to_string(want) + "-spherical, found empty";
      } else {
        rec.ok = is_n_spherical(inter, want);
        rec.detail = (rec.ok ? "" : "not ") + std::to_string(want) + std::string("-spherical");
      }
    }
    if (!rec.ok) rep.hypotheses_hold = false;
    rep.intersections.push_back(std::move(rec));
  }
  rep.conclusion_holds = is_n_spherical(x, n);
  return rep;
}

RelativeChainData relative_chain_complex(const DeltaComplex& x, const Subcomplex& a) {
  if (!is_face_closed(x, a))
    throw std::invalid_argument("relative_chain_complex: A is not a subcomplex");
  RelativeChainData out;
  int d = x.dimension();
  out.complex.dims.resize(d + 1, 0);
  out.complex.boundary.resize(d + 1);
  out.parent_index.resize(d + 1);
  std::vector<std::vector<int>> to_rel(d + 1);
  for (int p = 0; p <= d; ++p) {
    to_rel[p].assign(x.simplex_count(p), -1);
    for (int i = 0; i < x.simplex_count(p); ++i) {
      if (!a.member[p][i]) {
        to_rel[p][i] = static_cast<int>(out.parent_index[p].size());
        out.parent_index[p].push_back(i);
      }
    }
    out.complex.dims[p] = static_cast<long long>(out.parent_index[p].size());
  }
  for (int p = 1; p <= d; ++p) {
    SparseIntMatrix b(static_cast<int>(out.complex.dims[p - 1]),
                      static_cast<int>(out.complex.dims[p]));
    for (size_t col = 0; col < out.parent_index[p].size(); ++col) {
      const auto& f = x.faces(p, out.parent_index[p][col]);
      for (int j = 0; j <= p; ++j) {
        int r = to_rel[p - 1][f[j]];
        if (r >= 0) b.add(r, static_cast<int>(col), (j % 2 == 0) ? 1 : -1);
      }
    }
    out.complex.boundary[p] = std::move(b);
  }
  return out;
}

AbelianGroup relative_homology(const DeltaComplex& x, const Subcomplex& a, int p) {
  auto rel = relative_chain_complex(x, a);
  return rel.complex.homology(p);
}

// --------------------------------------------------------------------------
// Text format:
//   deltacomplex 1
//   vertices <n>
//   dim <p> count <k>      (then k lines, each p+1 face indices)
// --------------------------------------------------------------------------

DeltaComplex DeltaComplex::from_text(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("delta-complex parse error at line " + std::to_string(lineno) +
                                ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto h = line.find('#');
      if (h != std::string::npos) line.erase(h);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) fail("missing header");
  {
    std::istringstream ls(line);
    std::string word;
    int version = 0;
    if (!(ls >> word >> version) || word != "deltacomplex" || version != 1)
      fail("expected 'deltacomplex 1'");
  }
  if (!next_line()) fail("missing 'vertices' line");
  int nv = -1;
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> nv) || word != "vertices" || nv < 0) fail("expected 'vertices <n>'");
  }
  std::vector<std::vector<std::vector<int>>> higher;
  while (next_line()) {
    std::istringstream ls(line);
    std::string word;
    int p = 0, count = 0;
    std::string countword;
    if (!(ls >> word >> p >> countword >> count) || word != "dim" || countword != "count")
      fail("expected 'dim <p> count <k>'");
    if (p != static_cast<int>(higher.size()) + 1) fail("dimensions must appear in order 1,2,...");
    if (count < 0) fail("negative count");
    std::vector<std::vector<int>> level;
    for (int i = 0; i < count; ++i) {
      if (!next_line()) fail("missing simplex line " + std::to_string(i) + " in dimension " +
                             std::to_string(p));
      std::istringstream fs(line);
      std::vector<int> f;
      int idx;
      while (fs >> idx) f.push_back(idx);
      if (static_cast<int>(f.size()) != p + 1)
        fail("simplex " + std::to_string(i) + " in dimension " + std::to_string(p) + " has " +
             std::to_string(f.size()) + " faces, expected " + std::to_string(p + 1));
      int upper = (p == 1) ? nv : static_cast<int>(higher[p - 2].size());
      for (int v : f)
        if (v < 0 || v >= upper)
          fail("simplex " + std::to_string(i) + " in dimension " + std::to_string(p) +
               " has face index " + std::to_string(v) + " out of range");
      level.push_back(std::move(f));
    }
    higher.push_back(std::move(level));
  }
  return DeltaComplex::build(nv, std::move(higher));
}

void DeltaComplex::to_text(std::ostream& out) const {
  out << "deltacomplex 1\n";
  out << "vertices " << vertex_count() << "\n";
  for (int p = 1; p <= dimension(); ++p) {
    out << "dim " << p << " count " << simplex_count(p) << "\n";
    for (int i = 0; i < simplex_count(p); ++i) {
      const auto& f = faces(p, i);
      for (size_t j = 0; j < f.size(); ++j) out << (j ? " " : "") << f[j];
      out << "\n";
    }
  }
}

}  // namespace homstab::complexes
