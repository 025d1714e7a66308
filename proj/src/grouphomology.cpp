#include "homstab/grouphomology.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace homstab::grouphomology {

using chains::ChainComplex;
using chains::ChainMap;
using exactlin::Int;
using groups::Perm;

long long BarComplex::index_of_tuple(const std::vector<int>& tuple) const {
  long long m = group->size() - 1;
  long long idx = 0;
  for (int t : tuple) {
    if (t < 1 || t > m) throw std::invalid_argument("bar tuple holds an invalid element");
    idx = idx * m + (t - 1);
  }
  return idx;
}

std::vector<int> BarComplex::tuple_of_index(int p, long long index) const {
  long long m = group->size() - 1;
  std::vector<int> tuple(p);
  for (int j = p - 1; j >= 0; --j) {
    tuple[j] = static_cast<int>(index % m) + 1;
    index /= m;
  }
  return tuple;
}

BarComplex bar_complex(const FinitePermGroup& g, int r, const Caps& caps) {
  if (r < 0) throw std::invalid_argument("bar_complex: negative degree");
  BarComplex bar;
  bar.group = &g;
  bar.truncation = r + 1;
  long long m = g.size() - 1;
  // cap check on the largest chain group
  {
    Int size = 1;
    for (int p = 0; p < bar.truncation; ++p) {
      size *= (m == 0 ? 1 : m);
      if (size > caps.max_bar_basis)
        throw ResourceCapError("bar basis (|G|-1)^" + std::to_string(bar.truncation) + " = " +
                               size.str() + " exceeds cap " +
                               std::to_string(caps.max_bar_basis));
    }
  }
  bar.chains.dims.resize(bar.truncation + 1);
  bar.chains.boundary.resize(bar.truncation + 1);
  long long dim = 1;
  for (int p = 0; p <= bar.truncation; ++p) {
    bar.chains.dims[p] = dim;
    dim *= m;
  }
  if (m == 0)
    for (int p = 1; p <= bar.truncation; ++p) bar.chains.dims[p] = 0;

  for (int p = 1; p <= bar.truncation; ++p) {
    SparseIntMatrix b(static_cast<int>(bar.chains.dims[p - 1]),
                      static_cast<int>(bar.chains.dims[p]));
    std::vector<int> tuple(p, 1);
    long long cols = bar.chains.dims[p];
    for (long long col = 0; col < cols; ++col) {
      // d_0 drops the first entry, d_p the last, d_i multiplies a pair;
      // normalized chains drop any term whose pair multiplies to identity
      if (p == 1) {
        // boundary of [x] is [] - [] = 0
      } else {
        std::vector<int> face(tuple.begin() + 1, tuple.end());
        b.add(static_cast<int>(bar.index_of_tuple(face)), static_cast<int>(col), 1);
        face.assign(tuple.begin(), tuple.end() - 1);
        b.add(static_cast<int>(bar.index_of_tuple(face)),
              static_cast<int>(col), (p % 2 == 0) ? 1 : -1);
        for (int i = 1; i <= p - 1; ++i) {
          int prod = g.compose(tuple[i - 1], tuple[i]);
          if (prod == g.identity_index()) continue;
          face = tuple;
          face.erase(face.begin() + i);
          face[i - 1] = prod;
          b.add(static_cast<int>(bar.index_of_tuple(face)), static_cast<int>(col),
                (i % 2 == 0) ? 1 : -1);
        }
      }
      // next tuple in mixed-radix order
      for (int j = p - 1; j >= 0; --j) {
        if (tuple[j] < m) {
          ++tuple[j];
          break;
        }
        tuple[j] = 1;
      }
    }
    bar.chains.boundary[p] = std::move(b);
  }
  return bar;
}

HomologyProfile group_homology(const FinitePermGroup& g, int r, const Caps& caps) {
  auto bar = bar_complex(g, r, caps);
  HomologyProfile prof;
  prof.reduced = false;
  prof.groups.resize(r + 1);
  for (int p = 0; p <= r; ++p) prof.groups[p] = bar.chains.homology(p);
  return prof;
}

namespace {

void validate_element_map(const FinitePermGroup& h, const FinitePermGroup& g,
                          const std::vector<int>& element_map) {
  if (static_cast<long long>(element_map.size()) != h.size())
    throw std::invalid_argument("element map has wrong size");
  std::set<int> seen;
  for (int v : element_map) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("element map out of range");
    if (!seen.insert(v).second)
      throw std::invalid_argument("element map is not injective");
  }
  if (element_map[h.identity_index()] != g.identity_index())
    throw std::invalid_argument("element map does not fix the identity");
  for (int i = 0; i < h.size(); ++i)
    for (int j = 0; j < h.size(); ++j)
      if (element_map[h.compose(i, j)] != g.compose(element_map[i], element_map[j]))
        throw std::invalid_argument("element map is not a homomorphism");
}

// chain map of the bar complexes induced by an injective homomorphism;
// tuple-wise application never creates a degenerate tuple
ChainMap bar_chain_map(const BarComplex& src, const BarComplex& tgt,
                       const std::vector<int>& element_map, int top_degree) {
  ChainMap f;
  f.maps.resize(top_degree + 1);
  for (int p = 0; p <= top_degree; ++p) {
    SparseIntMatrix m(static_cast<int>(tgt.chains.dim(p)), static_cast<int>(src.chains.dim(p)));
    long long cols = src.chains.dim(p);
    for (long long col = 0; col < cols; ++col) {
      auto tuple = src.tuple_of_index(p, col);
      for (int& t : tuple) t = element_map[t];
      m.set(static_cast<int>(tgt.index_of_tuple(tuple)), static_cast<int>(col), 1);
    }
    f.maps[p] = std::move(m);
  }
  return f;
}

InducedMapReport induced_from_analysis(const exactlin::PresentedMapAnalysis& an) {
  InducedMapReport rep;
  rep.source = an.source;
  rep.target = an.target;
  rep.injective = an.injective;
  rep.surjective = an.surjective;
  rep.matrix_on_generators = an.matrix_on_generators;
  rep.target_gen_orders = an.target_gen_orders;
  return rep;
}

}  // namespace

InducedMapReport induced_map(const FinitePermGroup& h, const FinitePermGroup& g,
                             const std::vector<int>& element_map, int r, const Caps& caps) {
  validate_element_map(h, g, element_map);
  auto src = bar_complex(h, r, caps);
  auto tgt = bar_complex(g, r, caps);
  auto f = bar_chain_map(src, tgt, element_map, r + 1);
  chains::validate_chain_map(src.chains, tgt.chains, f);
  auto an = chains::homology_map(src.chains, tgt.chains, f, r, caps.max_torsion_enum);
  return induced_from_analysis(an);
}

InducedMapReport induced_inclusion_map(const FinitePermGroup& h, const FinitePermGroup& g, int r,
                                       const Caps& caps) {
  return induced_map(h, g, groups::embed_elements(h, g), r, caps);
}

bool conjugation_invariance_check(const FinitePermGroup& g, int element, int r,
                                  const Caps& caps) {
  if (element < 0 || element >= g.size())
    throw std::invalid_argument("conjugation_invariance_check: bad element");
  std::vector<int> conj(g.size());
  int inv = g.inverse(element);
  for (int i = 0; i < g.size(); ++i) conj[i] = g.compose(g.compose(element, i), inv);
  auto bar = bar_complex(g, r, caps);
  auto f = bar_chain_map(bar, bar, conj, r + 1);
  chains::validate_chain_map(bar.chains, bar.chains, f);
  auto an = chains::homology_map(bar.chains, bar.chains, f, r, caps.max_torsion_enum);
  ChainMap id;
  id.maps.resize(r + 2);
  for (int p = 0; p <= r + 1; ++p)
    id.maps[p] = SparseIntMatrix::identity(static_cast<int>(bar.chains.dim(p)));
  auto an_id = chains::homology_map(bar.chains, bar.chains, id, r, caps.max_torsion_enum);
  return an.matrix_on_generators == an_id.matrix_on_generators;
}

KunnethReport kunneth_check(const FinitePermGroup& a, const FinitePermGroup& b, int r,
                            const Caps& caps) {
  if (r < 1 || r > 2) throw std::invalid_argument("kunneth_check: r must be 1 or 2");
  KunnethReport rep;
  rep.r = r;
  auto prod = groups::direct_product(a, b);
  auto hp = group_homology(prod, r, caps);
  auto ha = group_homology(a, r, caps);
  auto hb = group_homology(b, r, caps);
  for (int i = 0; i <= r; ++i) {
    rep.h_product.push_back(hp.at(i));
    rep.h_a.push_back(ha.at(i));
    rep.h_b.push_back(hb.at(i));
  }
  rep.h_predicted.resize(r + 1);
  rep.h_predicted[0] = AbelianGroup{1, {}};
  if (r >= 1) rep.h_predicted[1] = exactlin::direct_sum(ha.at(1), hb.at(1));
  if (r >= 2) {
    auto middle = exactlin::tensor_product(ha.at(1), hb.at(1));
    rep.h_predicted[2] =
        exactlin::direct_sum(exactlin::direct_sum(ha.at(2), middle), hb.at(2));
  }
  for (int i = 0; i <= r; ++i) {
    if (!(rep.h_product[i] == rep.h_predicted[i])) {
      rep.match = false;
      rep.detail += "degree " + std::to_string(i) + ": direct " +
                    rep.h_product[i].to_string() + " vs predicted " +
                    rep.h_predicted[i].to_string() + "; ";
    }
  }
  return rep;
}

std::string family_name(Family f) {
  return f == Family::symmetric ? "symmetric" : "signed";
}

FinitePermGroup family_group(Family f, int n) {
  return f == Family::symmetric ? groups::symmetric_group(n)
                                : groups::signed_symmetric_group(n);
}

StabilityReport stability_check(Family family, int r, int n, const Caps& caps) {
  if (n < 1) throw std::invalid_argument("stability_check: n must be >= 1");
  StabilityReport rep;
  rep.family = family;
  rep.r = r;
  rep.n = n;
  rep.in_range = n > 2 * r;
  auto small = family_group(family, n - 1);
  auto big = family_group(family, n);
  // the signed group on n-1 letters sits inside the one on n letters by
  // renumbering points; build the embedding explicitly
  std::vector<int> element_map;
  if (family == Family::symmetric) {
    element_map = groups::embed_elements(small, big);
  } else {
    element_map.resize(small.size());
    for (int i = 0; i < small.size(); ++i) {
      Perm ext = Perm::identity(big.degree());
      const Perm& e = small.element(i);
      for (int p = 0; p < small.degree(); ++p) {
        int letter = groups::signed_letter(n - 1, p);
        int image = groups::signed_letter(n - 1, e.img[p]);
        ext.img[groups::signed_point(n, letter)] = groups::signed_point(n, image);
      }
      auto idx = big.index_of(ext);
      if (!idx) throw std::logic_error("signed embedding failed");
      element_map[i] = *idx;
    }
  }
  auto rep_map = induced_map(small, big, element_map, r, caps);
  rep.source = rep_map.source;
  rep.target = rep_map.target;
  rep.iso = rep_map.iso();
  return rep;
}

AbelianGroup abelianization(const FinitePermGroup& g) {
  const auto& gens = g.generators();
  int k = static_cast<int>(gens.size());
  if (k == 0) return AbelianGroup{};
  // BFS over the Cayley graph; each element gets the exponent vector of its
  // BFS word, and every edge (e, e*gen) yields a relation in Z^k
  std::map<Perm, std::vector<long long>> word;
  std::deque<Perm> queue;
  word[Perm::identity(g.degree())] = std::vector<long long>(k, 0);
  queue.push_back(Perm::identity(g.degree()));
  std::vector<std::vector<long long>> relations;
  while (!queue.empty()) {
    Perm e = queue.front();
    queue.pop_front();
    auto w = word[e];
    for (int i = 0; i < k; ++i) {
      Perm f = gens[i] * e;
      auto wf = w;
      wf[i] += 1;
      auto it = word.find(f);
      if (it == word.end()) {
        word[f] = wf;
        queue.push_back(std::move(f));
      } else {
        std::vector<long long> rel(k);
        bool zero = true;
        for (int j = 0; j < k; ++j) {
          rel[j] = wf[j] - it->second[j];
          if (rel[j] != 0) zero = false;
        }
        if (!zero) relations.push_back(std::move(rel));
      }
    }
  }
  SparseIntMatrix lattice(k, static_cast<int>(relations.size()));
  for (int c = 0; c < static_cast<int>(relations.size()); ++c)
    for (int r = 0; r < k; ++r)
      if (relations[c][r] != 0) lattice.set(r, c, relations[c][r]);
  return exactlin::cokernel_structure(k, lattice);
}

}  // namespace homstab::grouphomology
