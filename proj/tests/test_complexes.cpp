#include "homstab/complexes.hpp"

#include <sstream>

#include "doctest.h"

using namespace homstab;
using namespace homstab::complexes;
using exactlin::AbelianGroup;
using homstab::Int;
using exactlin::SparseIntMatrix;

namespace {

// --- independent dense oracle -------------------------------------------
// Dense integer Smith diagonal by plain fraction-avoiding elimination;
// deliberately separate from the sparse engine.

std::vector<Int> dense_smith_diagonal(std::vector<std::vector<Int>> a) {
  int nr = static_cast<int>(a.size());
  int nc = nr == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<Int> diag;
  int t = 0;
  while (t < nr && t < nc) {
    int pr = -1, pc = -1;
    Int best = 0;
    for (int r = t; r < nr; ++r)
      for (int c = t; c < nc; ++c)
        if (a[r][c] != 0 && (pr < 0 || abs(a[r][c]) < best)) {
          pr = r;
          pc = c;
          best = abs(a[r][c]);
        }
    if (pr < 0) break;
    std::swap(a[t], a[pr]);
    for (int r = 0; r < nr; ++r) std::swap(a[r][t], a[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int r = t + 1; r < nr; ++r) {
        if (a[r][t] == 0) continue;
        Int q = a[r][t] / a[t][t];
        for (int c = t; c < nc; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (int c = t + 1; c < nc; ++c) {
        if (a[t][c] == 0) continue;
        Int q = a[t][c] / a[t][t];
        for (int r = t; r < nr; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (int r = t; r < nr; ++r) std::swap(a[r][t], a[r][c]);
          clean = false;
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  // enforce divisibility with gcd/lcm on the diagonal values only
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i + 1] % diag[i] != 0) {
        Int g = gcd(diag[i], diag[i + 1]);
        Int l = diag[i] / g * diag[i + 1];
        diag[i] = g;
        diag[i + 1] = l;
        changed = true;
      }
  }
  return diag;
}

HomologyProfile dense_homology_oracle(const DeltaComplex& x, bool reduced) {
  HomologyProfile prof;
  prof.reduced = reduced;
  int d = x.dimension();
  prof.groups.resize(d + 1);
  auto dense = [&](int p) { return boundary_matrix(x, p).to_dense(); };
  for (int p = 0; p <= d; ++p) {
    std::vector<Int> dp_diag, dnext_diag;
    long long np = x.simplex_count(p);
    if (p >= 1) dp_diag = dense_smith_diagonal(dense(p));
    if (p == 0 && reduced) dp_diag = dense_smith_diagonal(x.augmentation().to_dense());
    if (p + 1 <= d) dnext_diag = dense_smith_diagonal(dense(p + 1));
    std::vector<Int> torsion;
    for (auto& v : dnext_diag)
      if (v > 1) torsion.push_back(v);
    prof.groups[p] = AbelianGroup{np - static_cast<long long>(dp_diag.size()) -
                                      static_cast<long long>(dnext_diag.size()),
                                  torsion};
  }
  return prof;
}

// --- small standard complexes --------------------------------------------

DeltaComplex single_edge() {
  return DeltaComplex::build(2, {{{1, 0}}});  // d_0 = vertex 1, d_1 = vertex 0
}

DeltaComplex loop_edge() { return DeltaComplex::build(1, {{{0, 0}}}); }

DeltaComplex circle_two_edges() {
  return DeltaComplex::build(2, {{{1, 0}, {0, 1}}});
}

DeltaComplex four_cycle() {
  // vertices 0..3, edges (0->1), (1->2), (2->3), (3->0)
  return DeltaComplex::build(4, {{{1, 0}, {2, 1}, {3, 2}, {0, 3}}});
}

DeltaComplex projective_plane() {
  // 2 vertices; edges a, b: v0 -> v1, c: loop at v0; triangles with
  // boundaries a - b + c and b - a + c
  return DeltaComplex::build(2, {{{1, 0}, {1, 0}, {0, 0}},
                                 {{0, 1, 2}, {1, 0, 2}}});
}

}  // namespace

TEST_CASE("boundary_matrix definitions") {
  auto e = single_edge();
  auto b = boundary_matrix(e, 1);
  CHECK(b.get(0, 0) == -1);
  CHECK(b.get(1, 0) == 1);

  auto l = loop_edge();
  CHECK(boundary_matrix(l, 1).is_zero());

  auto c = circle_two_edges();
  auto bc = boundary_matrix(c, 1);
  CHECK(bc.get(0, 0) == -1);
  CHECK(bc.get(1, 0) == 1);
  CHECK(bc.get(0, 1) == 1);
  CHECK(bc.get(1, 1) == -1);
}

TEST_CASE("homology of basic complexes") {
  auto pt = DeltaComplex::single_point();
  auto prof = homology(pt, true);
  CHECK(prof.all_trivial());
  CHECK(homology(pt, false).groups[0] == AbelianGroup{1, {}});

  auto c = circle_two_edges();
  auto hc = homology(c, true);
  CHECK(hc.groups[0].trivial());
  CHECK(hc.groups[1] == AbelianGroup{1, {}});

  auto rp2 = projective_plane();
  auto hr = homology(rp2, true);
  CHECK(hr.groups[0].trivial());
  CHECK(hr.groups[1] == AbelianGroup{0, {2}});
  CHECK(hr.groups[2].trivial());

  CHECK_THROWS_AS(homology(DeltaComplex(), true), std::invalid_argument);
}

TEST_CASE("simplicial identity validation rejects bad face data") {
  // a triangle whose edges do not share vertices correctly
  CHECK_THROWS_AS(DeltaComplex::build(3, {{{1, 0}, {2, 1}, {0, 2}}, {{0, 1, 2}}}),
                  std::invalid_argument);
  // bad face index
  CHECK_THROWS_AS(DeltaComplex::build(2, {{{2, 0}}}), std::invalid_argument);
}

TEST_CASE("is_n_spherical conventions") {
  auto pt = DeltaComplex::single_point();
  CHECK(is_n_spherical(pt, 0));
  CHECK(is_n_spherical(pt, 5));  // contractible-like: spherical of every degree
  auto c = circle_two_edges();
  CHECK(is_n_spherical(c, 1));
  CHECK(!is_n_spherical(c, 0));
}

TEST_CASE("join with finite set") {
  // two points * two points = 4-cycle, 1-spherical
  auto two_points = DeltaComplex::build(2, {});
  auto sus = join_with_finite_set(two_points, 2);
  CHECK(sus.simplex_count(0) == 4);
  CHECK(sus.simplex_count(1) == 4);
  CHECK(is_n_spherical(sus, 1));
  auto h = homology(sus, true);
  CHECK(h.groups[1] == AbelianGroup{1, {}});

  // cone kills all reduced homology
  auto cone = join_with_finite_set(circle_two_edges(), 1);
  CHECK(homology(cone, true).all_trivial());

  // circle * 3 points: 2-spherical of rank 2 (rank H~_1 times m-1)
  auto j3 = join_with_finite_set(circle_two_edges(), 3);
  CHECK(is_n_spherical(j3, 2));
  CHECK(homology(j3, true).groups[2] == AbelianGroup{2, {}});
  CHECK_THROWS_AS(join_with_finite_set(circle_two_edges(), 0), std::invalid_argument);
}

TEST_CASE("join shifts reduced homology and tensors rank by m-1") {
  auto check_join = [&](const DeltaComplex& x, int m) {
    auto hx = homology(x, true);
    auto hj = homology(join_with_finite_set(x, m), true);
    for (int p = 0; p < static_cast<int>(hj.groups.size()); ++p) {
      auto expect = AbelianGroup{};
      if (p >= 1) {
        auto below = hx.at(p - 1);
        std::vector<Int> torsion;
        for (int k = 0; k < m - 1; ++k)
          torsion.insert(torsion.end(), below.torsion.begin(), below.torsion.end());
        expect = exactlin::from_cyclic_orders(below.free_rank * (m - 1), torsion);
      }
      CHECK(hj.at(p) == expect);
    }
  };
  check_join(circle_two_edges(), 2);
  check_join(circle_two_edges(), 3);
  check_join(projective_plane(), 2);
  check_join(four_cycle(), 3);
}

TEST_CASE("subcomplex machinery and intersection") {
  auto c = four_cycle();
  auto arc1 = Subcomplex::empty_like(c);  // edges 0,1 plus closure
  arc1.insert(1, 0);
  arc1.insert(1, 1);
  arc1 = face_closure(c, arc1);
  CHECK(is_face_closed(c, arc1));
  auto arc2 = Subcomplex::empty_like(c);
  arc2.insert(1, 2);
  arc2.insert(1, 3);
  arc2 = face_closure(c, arc2);

  // one part: identity
  auto only = intersect_subcomplexes(c, {arc1});
  CHECK(only.total_simplices() == arc1.size());

  // two arcs meet in the two shared vertices
  auto meet = intersect_subcomplexes(c, {arc1, arc2});
  CHECK(meet.simplex_count(0) == 2);
  CHECK(meet.simplex_count(1) == 0);

  // disjoint pieces give the empty complex
  auto v0 = Subcomplex::empty_like(c);
  v0.insert(0, 0);
  auto v2 = Subcomplex::empty_like(c);
  v2.insert(0, 2);
  CHECK(intersect_subcomplexes(c, {v0, v2}).empty());

  // non-face-closed input rejected
  auto bad = Subcomplex::empty_like(c);
  bad.insert(1, 0);
  CHECK_THROWS_AS(intersect_subcomplexes(c, {bad}), std::invalid_argument);
}

TEST_CASE("cover sphericity: circle covered by two arcs") {
  auto c = four_cycle();
  auto arc1 = Subcomplex::empty_like(c);
  arc1.insert(1, 0);
  arc1.insert(1, 1);
  arc1 = face_closure(c, arc1);
  auto arc2 = Subcomplex::empty_like(c);
  arc2.insert(1, 2);
  arc2.insert(1, 3);
  arc2 = face_closure(c, arc2);
  auto rep = verify_cover_sphericity(c, {arc1, arc2}, 1);
  CHECK(rep.union_covers);
  CHECK(rep.hypotheses_hold);
  CHECK(rep.conclusion_holds);
  CHECK(rep.all_ok());
}

TEST_CASE("cover sphericity flags violated hypotheses") {
  // two disjoint edges, covered by the two edges, n = 1: the k=2
  // intersection is empty but 0-sphericity is demanded
  auto x = DeltaComplex::build(4, {{{1, 0}, {3, 2}}});
  auto p1 = Subcomplex::empty_like(x);
  p1.insert(1, 0);
  p1 = face_closure(x, p1);
  auto p2 = Subcomplex::empty_like(x);
  p2.insert(1, 1);
  p2 = face_closure(x, p2);
  auto rep = verify_cover_sphericity(x, {p1, p2}, 1);
  CHECK(!rep.hypotheses_hold);
  bool flagged = false;
  for (const auto& rec : rep.intersections)
    if (rec.indices.size() == 2 && !rec.ok) flagged = true;
  CHECK(flagged);
}

TEST_CASE("relative homology") {
  auto c = four_cycle();
  // A = X gives zero in all degrees
  auto full = Subcomplex::full_like(c);
  CHECK(relative_homology(c, full, 0).trivial());
  CHECK(relative_homology(c, full, 1).trivial());

  // (disk, boundary circle): cone over the 4-cycle rel its base
  auto disk = join_with_finite_set(c, 1);
  auto boundary = Subcomplex::empty_like(disk);
  for (int i = 0; i < 4; ++i) boundary.insert(1, i);  // original edges come first
  boundary = face_closure(disk, boundary);
  CHECK(relative_homology(disk, boundary, 2) == AbelianGroup{1, {}});
  CHECK(relative_homology(disk, boundary, 1).trivial());
  CHECK(relative_homology(disk, boundary, 0).trivial());

  // cross-check through the mapping cone of the inclusion
  auto sub = extract(disk, boundary);
  chains::ChainMap incl;
  auto sub_cc = sub.complex.chain_complex();
  auto disk_cc = disk.chain_complex();
  incl.maps.resize(sub_cc.dims.size());
  for (int p = 0; p <= sub.complex.dimension(); ++p) {
    SparseIntMatrix f(disk.simplex_count(p), sub.complex.simplex_count(p));
    for (int i = 0; i < disk.simplex_count(p); ++i)
      if (sub.old_to_new[p][i] >= 0) f.set(i, sub.old_to_new[p][i], 1);
    incl.maps[p] = std::move(f);
  }
  chains::validate_chain_map(sub_cc, disk_cc, incl);
  auto cone = chains::mapping_cone(sub_cc, disk_cc, incl);
  for (int p = 0; p <= 2; ++p) CHECK(cone.homology(p) == relative_homology(disk, boundary, p));

  // A not a subcomplex rejected
  auto bad = Subcomplex::empty_like(disk);
  bad.insert(1, 0);
  CHECK_THROWS_AS(relative_homology(disk, bad, 1), std::invalid_argument);
}

TEST_CASE("euler characteristic identity on assorted complexes") {
  auto check_euler = [](const DeltaComplex& x) {
    auto prof = homology(x, false);
    long long chi_cells = 0, chi_h = 0;
    for (int p = 0; p <= x.dimension(); ++p) {
      long long sgn = (p % 2 == 0) ? 1 : -1;
      chi_cells += sgn * x.simplex_count(p);
      chi_h += sgn * prof.groups[p].free_rank;
    }
    CHECK(chi_cells == chi_h);
  };
  check_euler(circle_two_edges());
  check_euler(projective_plane());
  check_euler(four_cycle());
  check_euler(join_with_finite_set(circle_two_edges(), 3));
  check_euler(DeltaComplex::single_point());
}

TEST_CASE("boundary squared vanishes on constructed complexes") {
  for (auto x : {projective_plane(), join_with_finite_set(four_cycle(), 2),
                 join_with_finite_set(projective_plane(), 3)}) {
    for (int p = 2; p <= x.dimension(); ++p)
      CHECK((boundary_matrix(x, p - 1) * boundary_matrix(x, p)).is_zero());
  }
}

TEST_CASE("sparse homology agrees with the dense oracle") {
  for (bool reduced : {false, true}) {
    for (auto x : {single_edge(), circle_two_edges(), projective_plane(), four_cycle(),
                   join_with_finite_set(circle_two_edges(), 3),
                   join_with_finite_set(projective_plane(), 2)}) {
      REQUIRE(x.total_simplices() <= 50);
      CHECK(homology(x, reduced) == dense_homology_oracle(x, reduced));
    }
  }
}

TEST_CASE("text round trip and parse errors") {
  auto x = projective_plane();
  std::ostringstream out;
  x.to_text(out);
  std::istringstream in(out.str());
  auto y = DeltaComplex::from_text(in);
  std::ostringstream out2;
  y.to_text(out2);
  CHECK(out.str() == out2.str());
  CHECK(homology(y, true).groups[1] == AbelianGroup{0, {2}});

  std::istringstream bad("deltacomplex 1\nvertices 2\ndim 1 count 1\n5 0\n");
  try {
    DeltaComplex::from_text(bad);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(msg.find("out of range") != std::string::npos);
  }
}
