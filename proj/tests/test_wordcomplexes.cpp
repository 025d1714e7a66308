#include "homstab/wordcomplexes.hpp"

#include "doctest.h"

using namespace homstab;
using namespace homstab::wordcomplexes;
using exactlin::AbelianGroup;
using homstab::Int;

namespace {

// inclusion-exclusion derangement count, the independent oracle for the top
// Betti number of X(n)
Int derangements(int n) {
  Int nf = 1;
  for (int i = 2; i <= n; ++i) nf *= i;
  Int sum = 0;
  Int kf = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) kf *= k;
    Int term = nf / kf;
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

long long count_words(int n, int p, bool with_signs) {
  // n! / (n-p-1)! times 2^{p+1} when signed
  long long c = 1;
  for (int k = n; k > n - p - 1; --k) c *= k;
  if (with_signs)
    for (int j = 0; j <= p; ++j) c *= 2;
  return c;
}

}  // namespace

TEST_CASE("X(n) simplex counts") {
  auto x2 = injective_words_complex(2);
  CHECK(x2.complex->simplex_count(0) == 2);
  CHECK(x2.complex->simplex_count(1) == 2);

  auto x3 = injective_words_complex(3);
  CHECK(x3.complex->simplex_count(0) == 3);
  CHECK(x3.complex->simplex_count(1) == 6);
  CHECK(x3.complex->simplex_count(2) == 6);

  for (int n : {2, 3, 4}) {
    auto x = injective_words_complex(n);
    for (int p = 0; p <= n - 1; ++p)
      CHECK(x.complex->simplex_count(p) == count_words(n, p, false));
  }
}

TEST_CASE("signed X(n) simplex counts") {
  auto s2 = signed_injective_words_complex(2);
  CHECK(s2.complex->simplex_count(0) == 4);
  CHECK(s2.complex->simplex_count(1) == 8);
  for (int n : {1, 2, 3}) {
    auto x = signed_injective_words_complex(n);
    for (int p = 0; p <= n - 1; ++p)
      CHECK(x.complex->simplex_count(p) == count_words(n, p, true));
  }
}

TEST_CASE("X(n) sphericity and derangement ranks, n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    auto x = injective_words_complex(n);
    CHECK(complexes::is_n_spherical(*x.complex, n - 1));
    auto prof = complexes::homology(*x.complex, true);
    CHECK(prof.at(n - 1).torsion.empty());
    CHECK(Int(prof.at(n - 1).free_rank) == derangements(n));
  }
}

TEST_CASE("signed X(n) sphericity, n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    auto x = signed_injective_words_complex(n);
    CHECK(complexes::is_n_spherical(*x.complex, n - 1));
  }
  // n = 2 top rank 5 from the Euler characteristic: 4 - 8 = -4, reduced -5
  auto s2 = signed_injective_words_complex(2);
  auto prof = complexes::homology(*s2.complex, true);
  CHECK(prof.at(1) == AbelianGroup{5, {}});
}

TEST_CASE("X(2) boundary matrix columns") {
  auto x2 = injective_words_complex(2);
  auto b = complexes::boundary_matrix(*x2.complex, 1);
  // both edges run between the two vertices with opposite orientations
  CHECK(b.get(0, 0) + b.get(0, 1) == 0);
  CHECK(abs(b.get(0, 0)) == 1);
  CHECK(abs(b.get(1, 0)) == 1);
}

TEST_CASE("cover pieces") {
  auto x2 = injective_words_complex(2);
  auto piece = cover_piece(x2, 1);
  // edge (1,2) plus its faces
  CHECK(piece.size() == 3);

  auto x3 = injective_words_complex(3);
  auto pieces = cover_pieces(x3);
  CHECK(complexes::subcomplex_union(pieces) == complexes::Subcomplex::full_like(*x3.complex));

  // X_1 cap X_2 in X(3) is the double cone over the vertex (3):
  // vertices (1),(2),(3) and edges (1,3),(2,3)
  auto meet = complexes::intersect_subcomplexes(*x3.complex, {pieces[0], pieces[1]});
  CHECK(meet.simplex_count(0) == 3);
  CHECK(meet.simplex_count(1) == 2);
  CHECK(meet.simplex_count(2) == 0);
  CHECK(complexes::homology(meet, true).all_trivial());

  CHECK_THROWS_AS(cover_piece(x3, 5), std::invalid_argument);
}

TEST_CASE("cover of X(n) satisfies the covering lemma hypotheses") {
  for (int n : {2, 3, 4}) {
    auto x = injective_words_complex(n);
    auto rep = complexes::verify_cover_sphericity(*x.complex, cover_pieces(x), n - 1);
    CHECK(rep.all_ok());
  }
  // signed version
  auto s = signed_injective_words_complex(3);
  auto rep = complexes::verify_cover_sphericity(*s.complex, cover_pieces(s), 2);
  CHECK(rep.all_ok());
}

TEST_CASE("standard flags and stabilizers") {
  auto x4 = injective_words_complex(4);
  auto flag = standard_flag(x4, 1);
  CHECK(flag.stabilizers[0].size() == 6);  // S_3
  CHECK(flag.stabilizers[1].size() == 2);  // S_2
  CHECK(flag.stabilizer_is_standard[0]);
  CHECK(flag.stabilizer_is_standard[1]);

  auto s3 = signed_injective_words_complex(3);
  auto sflag = standard_flag(s3, 0);
  CHECK(sflag.stabilizers[0].size() == 8);  // S_2^+- of order 8
  CHECK(sflag.stabilizer_is_standard[0]);

  auto full = standard_flag(x4, 3);
  CHECK(full.stabilizers[3].size() == 1);

  CHECK_THROWS_AS(standard_flag(x4, 4), std::invalid_argument);
}

TEST_CASE("translation elements") {
  auto x3 = injective_words_complex(3);
  // tau1 = tau2: the identity qualifies
  int rho = *x3.simplex_of_word({1, 2, 3});
  int t23 = *x3.simplex_of_word({2, 3});
  int t13 = *x3.simplex_of_word({1, 3});
  auto same = translation_element(x3, 1, t23, t23, rho);
  REQUIRE(same.has_value());
  CHECK(x3.group->element(*same).is_identity());

  // (2,3) -> (1,3) inside (1,2,3): the transposition (1 2); Stab(rho) is
  // trivial so commutation is vacuous
  auto g = translation_element(x3, 1, t23, t13, rho);
  REQUIRE(g.has_value());
  const auto& perm = x3.group->element(*g);
  CHECK(perm.img[0] == 1);
  CHECK(perm.img[1] == 0);
  CHECK(perm.img[2] == 2);

  // X(5): rho = (5,4), faces (5) and (4); g = (4 5) commutes with S_3
  auto x5 = injective_words_complex(5);
  int rho54 = *x5.simplex_of_word({5, 4});
  int v5 = *x5.simplex_of_word({5});
  int v4 = *x5.simplex_of_word({4});
  auto h = translation_element(x5, 0, v5, v4, rho54);
  REQUIRE(h.has_value());
  const auto& ph = x5.group->element(*h);
  CHECK(ph.img[4] == 3);
  CHECK(ph.img[3] == 4);
  for (int i = 0; i < 3; ++i) CHECK(ph.img[i] == i);

  // non-faces rejected: (2,1) is an edge of X(3) but not a face of (1,2,3)
  CHECK_THROWS_AS(translation_element(x3, 1, t23, *x3.simplex_of_word({2, 1}), rho),
                  std::invalid_argument);
}

TEST_CASE("quillen audit passes for S_n on X(n)") {
  for (int n : {2, 3, 4}) {
    auto x = injective_words_complex(n);
    int r = std::min(2, n - 2);
    auto flag = standard_flag(x, r);
    auto rep = audit_quillen_conditions(x, flag, r);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("quillen audit passes for signed groups on signed X(n)") {
  for (int n : {2, 3}) {
    auto x = signed_injective_words_complex(n);
    int r = std::min(2, n - 2);
    auto flag = standard_flag(x, r);
    auto rep = audit_quillen_conditions(x, flag, r);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("quillen audit flags r beyond the connectivity range") {
  auto x3 = injective_words_complex(3);
  auto flag = standard_flag(x3, 2);  // longest flag available
  auto rep = audit_quillen_conditions(x3, flag, 3);
  CHECK(!rep.connectivity.pass);  // X(3) is 2-dimensional, H~_2 != 0
  CHECK(!rep.all_pass());
}

TEST_CASE("orbit counts under the distinguished families") {
  auto x3 = injective_words_complex(3);
  for (int p = 0; p <= 2; ++p) CHECK(groups::orbits(x3.action, p).size() == 1);

  // D_n on signed X(n): two orbits in the top dimension
  for (int n : {2, 3}) {
    auto s = signed_injective_words_complex(n);
    auto d = std::make_shared<groups::FinitePermGroup>(groups::weyl_d_group(n));
    auto act = groups::SimplicialAction::natural(s.complex, d);
    CHECK(groups::orbits(act, n - 1).size() == 2);
    for (int p = 0; p + 1 <= n - 1; ++p) CHECK(groups::orbits(act, p).size() == 1);
  }
}

TEST_CASE("orbit-stabilizer identity and conjugacy on word complexes") {
  auto x4 = injective_words_complex(4);
  const auto& g = *x4.group;
  for (int p = 0; p <= 2; ++p) {
    auto orb = groups::orbits(x4.action, p);
    for (const auto& o : orb) {
      auto stab = groups::stabilizer(x4.action, p, o[0]);
      CHECK(stab.size() * static_cast<long long>(o.size()) == g.size());
      // stabilizers along the orbit are conjugate via an explicit element
      for (int other : {o[static_cast<int>(o.size()) / 2], o.back()}) {
        int mover = -1;
        for (long long e = 0; e < g.size(); ++e)
          if (x4.action.apply(static_cast<int>(e), p, o[0]) == other) {
            mover = static_cast<int>(e);
            break;
          }
        REQUIRE(mover >= 0);
        auto stab2 = groups::stabilizer(x4.action, p, other);
        const auto& pm = g.element(mover);
        for (const auto& h : stab.elements()) CHECK(stab2.contains(pm * h * pm.inverse()));
      }
    }
  }
}

TEST_CASE("flag transitivity: some g moves any i-simplex to sigma^i") {
  auto x4 = injective_words_complex(4);
  auto flag = standard_flag(x4, 2);
  for (int i = 0; i <= 2; ++i) {
    auto orb = groups::orbits(x4.action, i);
    REQUIRE(orb.size() == 1);
    CHECK(std::find(orb[0].begin(), orb[0].end(), flag.simplices[i]) != orb[0].end());
  }
}
