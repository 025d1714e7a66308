#include "homstab/wordcomplexes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homstab::wordcomplexes {

using groups::Perm;

namespace {

// all injective words over the given letter pool, by length; for signed
// complexes the pool holds +-letters and "injective" means pairwise-distinct
// absolute values
std::vector<std::vector<std::vector<int>>> generate_words(const std::vector<int>& letters,
                                                          int max_len) {
  std::vector<std::vector<std::vector<int>>> by_len(max_len + 1);
  std::vector<int> cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) by_len[cur.size() - 1].push_back(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int letter : letters) {
      bool used = false;
      for (int c : cur)
        if (std::abs(c) == std::abs(letter)) used = true;
      if (used) continue;
      cur.push_back(letter);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return by_len;
}

WordComplex build_word_complex(int n, bool with_signs) {
  if (n < 1) throw std::invalid_argument("word complex: n must be >= 1");
  std::vector<int> letters;
  if (with_signs) {
    for (int i = 1; i <= n; ++i) {
      letters.push_back(-i);
      letters.push_back(i);
    }
    std::sort(letters.begin(), letters.end());
  } else {
    for (int i = 1; i <= n; ++i) letters.push_back(i);
  }
  auto words = generate_words(letters, n);

  WordComplex w;
  w.n = n;
  w.with_signs = with_signs;
  w.words = words;

  // vertex index of a letter: for signed complexes use the group's point
  // convention so the natural action works out of the box
  auto vertex_of = [&](int letter) {
    return with_signs ? groups::signed_point(n, letter) : letter - 1;
  };

  // dimension 0 must list vertices in index order; remap
  int nv = with_signs ? 2 * n : n;
  std::vector<std::vector<int>> vertex_words(nv);
  for (const auto& word : words[0]) vertex_words[vertex_of(word[0])] = word;
  w.words[0] = vertex_words;

  std::map<std::vector<int>, int> index_prev;
  for (int i = 0; i < nv; ++i) index_prev[w.words[0][i]] = i;

  std::vector<std::vector<std::vector<int>>> higher;
  for (int p = 1; p <= n - 1; ++p) {
    std::map<std::vector<int>, int> index_cur;
    std::vector<std::vector<int>> level;
    for (int i = 0; i < static_cast<int>(w.words[p].size()); ++i) {
      const auto& word = w.words[p][i];
      index_cur[word] = i;
      std::vector<int> f(p + 1);
      for (int j = 0; j <= p; ++j) {
        std::vector<int> sub = word;
        sub.erase(sub.begin() + j);
        f[j] = index_prev.at(sub);
      }
      level.push_back(std::move(f));
    }
    higher.push_back(std::move(level));
    index_prev = std::move(index_cur);
  }
  w.complex = std::make_shared<DeltaComplex>(DeltaComplex::build(nv, std::move(higher)));
  w.group = std::make_shared<FinitePermGroup>(with_signs ? groups::signed_symmetric_group(n)
                                                         : groups::symmetric_group(n));
  w.action = SimplicialAction::natural(w.complex, w.group);
  return w;
}

}  // namespace

std::optional<int> WordComplex::simplex_of_word(const std::vector<int>& target) const {
  int p = static_cast<int>(target.size()) - 1;
  if (p < 0 || p >= static_cast<int>(words.size())) return std::nullopt;
  for (int i = 0; i < static_cast<int>(words[p].size()); ++i)
    if (words[p][i] == target) return i;
  return std::nullopt;
}

std::string WordComplex::word_name(int p, int i) const {
  std::ostringstream os;
  os << "(";
  const auto& w = words[p][i];
  for (size_t j = 0; j < w.size(); ++j) os << (j ? "," : "") << w[j];
  os << ")";
  return os.str();
}

int WordComplex::vertex_of_letter(int letter) const {
  return with_signs ? groups::signed_point(n, letter) : letter - 1;
}

WordComplex injective_words_complex(int n) { return build_word_complex(n, false); }

WordComplex signed_injective_words_complex(int n) { return build_word_complex(n, true); }

Subcomplex cover_piece(const WordComplex& w, int i) {
  if (i < 1 || i > w.n) throw std::invalid_argument("cover_piece: unknown letter label");
  auto seed = Subcomplex::empty_like(*w.complex);
  for (int p = 0; p < static_cast<int>(w.words.size()); ++p) {
    for (int s = 0; s < static_cast<int>(w.words[p].size()); ++s) {
      int first = w.words[p][s][0];
      if (std::abs(first) == i) seed.insert(p, s);
    }
  }
  return complexes::face_closure(*w.complex, seed);
}

std::vector<Subcomplex> cover_pieces(const WordComplex& w) {
  std::vector<Subcomplex> out;
  for (int i = 1; i <= w.n; ++i) out.push_back(cover_piece(w, i));
  return out;
}

FinitePermGroup standard_subgroup(const WordComplex& w, int k) {
  const auto& g = *w.group;
  std::vector<Perm> members;
  for (const auto& e : g.elements()) {
    bool fixes = true;
    for (int letter = k + 1; letter <= w.n && fixes; ++letter)
      if (e.img[w.vertex_of_letter(letter)] != w.vertex_of_letter(letter)) fixes = false;
    if (fixes) members.push_back(e);
  }
  return FinitePermGroup::from_elements(g.degree(), std::move(members), g.labels(),
                                        std::max(groups::kDefaultElementCap, g.size()));
}

FlagData standard_flag(const WordComplex& w, int r) {
  if (r < 0 || r > w.n - 1) throw std::invalid_argument("standard_flag: r out of range");
  FlagData flag;
  for (int i = 0; i <= r; ++i) {
    std::vector<int> word;
    for (int letter = w.n; letter >= w.n - i; --letter) word.push_back(letter);
    auto s = w.simplex_of_word(word);
    if (!s) throw std::logic_error("standard_flag: flag word missing from the complex");
    flag.simplices.push_back(*s);
    flag.stabilizers.push_back(groups::stabilizer(w.action, i, *s));
    flag.standard_subgroups.push_back(standard_subgroup(w, w.n - i - 1));
    const auto& a = flag.stabilizers.back();
    const auto& b = flag.standard_subgroups.back();
    flag.stabilizer_is_standard.push_back(a.size() == b.size() && a.is_subset_of(b));
  }
  return flag;
}

std::optional<int> translation_element(const WordComplex& w, int i, int tau1, int tau2,
                                       int rho) {
  const auto& faces = w.complex->faces(i + 1, rho);
  bool t1_face = false, t2_face = false;
  for (int f : faces) {
    if (f == tau1) t1_face = true;
    if (f == tau2) t2_face = true;
  }
  if (!t1_face || !t2_face)
    throw std::invalid_argument("translation_element: taus are not faces of rho");
  auto stab = groups::stabilizer(w.action, i + 1, rho);
  const auto& g = *w.group;
  for (long long e = 0; e < g.size(); ++e) {
    if (w.action.apply(static_cast<int>(e), i, tau1) != tau2) continue;
    bool commutes = true;
    const Perm& pe = g.element(static_cast<int>(e));
    for (const auto& h : stab.elements()) {
      if (!(pe * h == h * pe)) {
        commutes = false;
        break;
      }
    }
    if (commutes) return static_cast<int>(e);
  }
  return std::nullopt;
}

QuillenAuditReport audit_quillen_conditions(const WordComplex& w, const FlagData& flag, int r) {
  QuillenAuditReport rep;
  rep.n = w.n;
  rep.r = r;
  rep.with_signs = w.with_signs;

  // (i) without inversions
  auto inv = groups::find_inversion(w.action);
  rep.without_inversions.pass = !inv.has_value();
  if (inv)
    rep.without_inversions.witness = "element " + std::to_string(inv->element) +
                                     " preserves simplex " + w.word_name(inv->p, inv->simplex) +
                                     " without fixing it pointwise";

  // (ii) homological r-connectivity
  {
    auto prof = complexes::homology(*w.complex, /*reduced=*/true);
    rep.connectivity.pass = true;
    for (int p = 0; p <= r; ++p) {
      if (!prof.at(p).trivial()) {
        rep.connectivity.pass = false;
        rep.connectivity.witness =
            "H~_" + std::to_string(p) + " = " + prof.at(p).to_string() + " != 0";
        break;
      }
    }
  }

  // (iii) one orbit of simplices in each dimension 0..r
  {
    rep.orbit_transitivity.pass = true;
    for (int p = 0; p <= r; ++p) {
      if (p > w.complex->dimension() || w.complex->simplex_count(p) == 0) {
        rep.orbit_transitivity.pass = false;
        rep.orbit_transitivity.witness =
            "no simplices in dimension " + std::to_string(p);
        break;
      }
      auto orb = groups::orbits(w.action, p);
      if (orb.size() != 1) {
        rep.orbit_transitivity.pass = false;
        rep.orbit_transitivity.witness = std::to_string(orb.size()) +
                                         " orbits in dimension " + std::to_string(p);
        break;
      }
    }
  }

  // (iv) flag of simplices with standard stabilizers
  {
    rep.flag_stabilizers.pass = true;
    if (flag.r() < r) {
      rep.flag_stabilizers.pass = false;
      rep.flag_stabilizers.witness = "flag has length " + std::to_string(flag.r() + 1) +
                                     ", needs " + std::to_string(r + 1);
    } else {
      for (int i = 0; i <= r; ++i) {
        if (!flag.stabilizer_is_standard[i]) {
          rep.flag_stabilizers.pass = false;
          rep.flag_stabilizers.witness =
              "Stab(sigma^" + std::to_string(i) + ") is not the standard subgroup";
          break;
        }
        if (i > 0) {
          // sigma^{i-1} must be a face of sigma^i
          const auto& faces = w.complex->faces(i, flag.simplices[i]);
          if (std::find(faces.begin(), faces.end(), flag.simplices[i - 1]) == faces.end()) {
            rep.flag_stabilizers.pass = false;
            rep.flag_stabilizers.witness = "flag is not a chain of faces at step " +
                                           std::to_string(i);
            break;
          }
        }
      }
    }
  }

  // (v) translation elements for every codimension-1 face pair, i = 0..r-1
  {
    rep.translations.pass = true;
    for (int i = 0; i + 1 <= std::min(r, w.complex->dimension()) && rep.translations.pass; ++i) {
      for (int rho = 0; rho < w.complex->simplex_count(i + 1) && rep.translations.pass; ++rho) {
        const auto& faces = w.complex->faces(i + 1, rho);
        for (int a : faces) {
          for (int b : faces) {
            if (!translation_element(w, i, a, b, rho)) {
              rep.translations.pass = false;
              rep.translations.witness = "no translation " + w.word_name(i, a) + " -> " +
                                         w.word_name(i, b) + " commuting with Stab(" +
                                         w.word_name(i + 1, rho) + ")";
              break;
            }
          }
          if (!rep.translations.pass) break;
        }
      }
    }
    // pairs in dimensions above dim(X) are vacuous; (ii)/(iii) flag those
  }
  return rep;
}

}  // namespace homstab::wordcomplexes
