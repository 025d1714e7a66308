#include "homstab/groups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace homstab::groups {

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm p;
  p.img.resize(degree());
  for (int i = 0; i < degree(); ++i) p.img[img[i]] = i;
  return p;
}

Perm Perm::identity(int degree) {
  Perm p;
  p.img.resize(degree);
  for (int i = 0; i < degree; ++i) p.img[i] = i;
  return p;
}

Perm operator*(const Perm& a, const Perm& b) {
  Perm c;
  c.img.resize(a.degree());
  for (int i = 0; i < a.degree(); ++i) c.img[i] = a.img[b.img[i]];
  return c;
}

namespace {

void check_bijection(const Perm& p, int degree) {
  if (p.degree() != degree) throw std::invalid_argument("permutation has wrong degree");
  std::vector<char> seen(degree, 0);
  for (int i = 0; i < degree; ++i) {
    if (p.img[i] < 0 || p.img[i] >= degree || seen[p.img[i]])
      throw std::invalid_argument("permutation is not a bijection of the ground set");
    seen[p.img[i]] = 1;
  }
}

}  // namespace

FinitePermGroup FinitePermGroup::from_generators(int degree, std::vector<Perm> generators,
                                                 std::vector<std::string> labels,
                                                 long long element_cap) {
  for (const auto& g : generators) check_bijection(g, degree);
  FinitePermGroup out;
  out.degree_ = degree;
  out.generators_ = generators;
  out.labels_ = std::move(labels);
  std::set<Perm> elements;
  std::deque<Perm> queue;
  elements.insert(Perm::identity(degree));
  queue.push_back(Perm::identity(degree));
  while (!queue.empty()) {
    Perm e = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Perm f = g * e;
      if (elements.insert(f).second) {
        if (static_cast<long long>(elements.size()) > element_cap)
          throw ResourceCapError("group enumeration exceeds element cap of " +
                                 std::to_string(element_cap));
        queue.push_back(std::move(f));
      }
    }
  }
  out.elements_.assign(elements.begin(), elements.end());
  out.finalize();
  return out;
}

FinitePermGroup FinitePermGroup::from_elements(int degree, std::vector<Perm> elements,
                                               std::vector<std::string> labels,
                                               long long element_cap,
                                               long long closure_check_limit) {
  if (static_cast<long long>(elements.size()) > element_cap)
    throw ResourceCapError("group exceeds element cap of " + std::to_string(element_cap));
  for (const auto& e : elements) check_bijection(e, degree);
  FinitePermGroup out;
  out.degree_ = degree;
  std::set<Perm> uniq(elements.begin(), elements.end());
  if (!uniq.count(Perm::identity(degree)))
    throw std::invalid_argument("from_elements: identity missing");
  out.elements_.assign(uniq.begin(), uniq.end());
  out.generators_ = out.elements_;
  out.labels_ = std::move(labels);
  out.finalize();
  long long n = out.size();
  if (n <= closure_check_limit) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!uniq.count(out.elements_[i] * out.elements_[j]))
          throw std::invalid_argument("from_elements: set is not closed under composition");
  } else {
    // sampled closure check on a deterministic stride
    long long stride = std::max<long long>(1, n / 64);
    for (long long i = 0; i < n; i += stride)
      for (long long j = 0; j < n; j += stride)
        if (!uniq.count(out.elements_[i] * out.elements_[j]))
          throw std::invalid_argument("from_elements: set is not closed under composition");
  }
  return out;
}

void FinitePermGroup::finalize() {
  std::sort(elements_.begin(), elements_.end());
  index_.clear();
  for (int i = 0; i < static_cast<int>(elements_.size()); ++i) index_[elements_[i]] = i;
  if (elements_.empty() || !elements_[0].is_identity())
    throw std::logic_error("group enumeration lost the identity");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != degree_)
    throw std::invalid_argument("labels size does not match ground set");
}

std::string FinitePermGroup::point_label(int i) const {
  if (!labels_.empty()) return labels_[i];
  return std::to_string(i);
}

std::optional<int> FinitePermGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FinitePermGroup::compose(int i, int j) const {
  auto idx = index_of(elements_[i] * elements_[j]);
  if (!idx) throw std::logic_error("group not closed under composition");
  return *idx;
}

int FinitePermGroup::inverse(int i) const {
  auto idx = index_of(elements_[i].inverse());
  if (!idx) throw std::logic_error("group not closed under inverse");
  return *idx;
}

bool FinitePermGroup::is_subset_of(const FinitePermGroup& g) const {
  if (degree_ != g.degree_) return false;
  for (const auto& e : elements_)
    if (!g.contains(e)) return false;
  return true;
}

FinitePermGroup trivial_group(int degree) {
  return FinitePermGroup::from_generators(degree, {});
}

FinitePermGroup symmetric_group(int n) {
  if (n < 0) throw std::invalid_argument("symmetric_group: n < 0");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm swap = Perm::identity(n);
    std::swap(swap.img[0], swap.img[1]);
    gens.push_back(swap);
    Perm cycle = Perm::identity(n);
    for (int i = 0; i < n; ++i) cycle.img[i] = (i + 1) % n;
    gens.push_back(cycle);
  }
  long long cap = kDefaultElementCap;
  return FinitePermGroup::from_generators(n, std::move(gens), std::move(labels), cap);
}

int signed_point(int n, int letter) {
  if (letter == 0 || letter > n || letter < -n)
    throw std::invalid_argument("signed_point: letter out of range");
  return letter > 0 ? letter - 1 : n + (-letter - 1);
}

int signed_letter(int n, int point) {
  if (point < 0 || point >= 2 * n) throw std::invalid_argument("signed_letter: out of range");
  return point < n ? point + 1 : -(point - n + 1);
}

namespace {

std::vector<std::string> signed_labels(int n) {
  std::vector<std::string> labels(2 * n);
  for (int p = 0; p < 2 * n; ++p) labels[p] = std::to_string(signed_letter(n, p));
  return labels;
}

// signed permutation sending letter a to letter b (and -a to -b), fixing the
// other letters
Perm signed_transposition(int n, int a, int b) {
  Perm p = Perm::identity(2 * n);
  p.img[signed_point(n, a)] = signed_point(n, b);
  p.img[signed_point(n, b)] = signed_point(n, a);
  p.img[signed_point(n, -a)] = signed_point(n, -b);
  p.img[signed_point(n, -b)] = signed_point(n, -a);
  return p;
}

Perm signed_flip(int n, int a) {
  Perm p = Perm::identity(2 * n);
  p.img[signed_point(n, a)] = signed_point(n, -a);
  p.img[signed_point(n, -a)] = signed_point(n, a);
  return p;
}

Perm signed_cycle(int n) {
  Perm p = Perm::identity(2 * n);
  for (int i = 1; i <= n; ++i) {
    int j = i % n + 1;
    p.img[signed_point(n, i)] = signed_point(n, j);
    p.img[signed_point(n, -i)] = signed_point(n, -j);
  }
  return p;
}

}  // namespace

FinitePermGroup signed_symmetric_group(int n) {
  if (n < 0) throw std::invalid_argument("signed_symmetric_group: n < 0");
  std::vector<Perm> gens;
  if (n >= 1) gens.push_back(signed_flip(n, 1));
  if (n >= 2) {
    gens.push_back(signed_transposition(n, 1, 2));
    gens.push_back(signed_cycle(n));
  }
  return FinitePermGroup::from_generators(2 * n, std::move(gens), signed_labels(n));
}

FinitePermGroup weyl_d_group(int n) {
  if (n < 1) throw std::invalid_argument("weyl_d_group: n < 1");
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(signed_transposition(n, 1, 2));
    gens.push_back(signed_cycle(n));
    gens.push_back(signed_flip(n, 1) * signed_flip(n, 2));  // two sign changes
  }
  return FinitePermGroup::from_generators(2 * n, std::move(gens), signed_labels(n));
}

FinitePermGroup direct_product(const FinitePermGroup& a, const FinitePermGroup& b) {
  int da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) {
    Perm p = Perm::identity(da + db);
    for (int i = 0; i < da; ++i) p.img[i] = g.img[i];
    gens.push_back(std::move(p));
  }
  for (const auto& g : b.generators()) {
    Perm p = Perm::identity(da + db);
    for (int i = 0; i < db; ++i) p.img[da + i] = da + g.img[i];
    gens.push_back(std::move(p));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < da; ++i) labels.push_back("a:" + a.point_label(i));
  for (int i = 0; i < db; ++i) labels.push_back("b:" + b.point_label(i));
  long long cap = std::max(kDefaultElementCap, a.size() * b.size());
  return FinitePermGroup::from_generators(da + db, std::move(gens), std::move(labels), cap);
}

std::vector<int> embed_elements(const FinitePermGroup& h, const FinitePermGroup& g) {
  if (h.degree() > g.degree())
    throw std::invalid_argument("embed_elements: H has larger degree than G");
  std::vector<int> map(h.size());
  for (long long i = 0; i < h.size(); ++i) {
    Perm ext = Perm::identity(g.degree());
    for (int x = 0; x < h.degree(); ++x) ext.img[x] = h.element(static_cast<int>(i)).img[x];
    auto idx = g.index_of(ext);
    if (!idx) throw std::invalid_argument("embed_elements: H is not a subgroup of G");
    map[static_cast<size_t>(i)] = *idx;
  }
  return map;
}

// ---------------------------------------------------------------------------

SimplicialAction SimplicialAction::natural(
    std::shared_ptr<const complexes::DeltaComplex> complex,
    std::shared_ptr<const FinitePermGroup> group) {
  const auto& x = *complex;
  const auto& g = *group;
  if (g.degree() != x.vertex_count())
    throw std::invalid_argument("SimplicialAction: ground set is not the vertex set");
  SimplicialAction act;
  act.complex_ = std::move(complex);
  act.group_ = std::move(group);
  int dim = x.dimension();
  act.table_.resize(g.size());
  // face-tuple lookup per dimension
  std::vector<std::map<std::vector<int>, int>> lookup(std::max(dim + 1, 1));
  for (int p = 1; p <= dim; ++p) {
    for (int i = 0; i < x.simplex_count(p); ++i) {
      auto [it, fresh] = lookup[p].emplace(x.faces(p, i), i);
      if (!fresh)
        throw std::invalid_argument(
            "SimplicialAction: simplices not determined by ordered faces in dimension " +
            std::to_string(p));
    }
  }
  for (long long e = 0; e < g.size(); ++e) {
    auto& tables = act.table_[e];
    tables.resize(dim + 1);
    const Perm& perm = g.element(static_cast<int>(e));
    tables[0].resize(x.vertex_count());
    for (int v = 0; v < x.vertex_count(); ++v) tables[0][v] = perm.img[v];
    for (int p = 1; p <= dim; ++p) {
      tables[p].resize(x.simplex_count(p));
      std::vector<char> hit(x.simplex_count(p), 0);
      for (int i = 0; i < x.simplex_count(p); ++i) {
        std::vector<int> mapped = x.faces(p, i);
        for (int& f : mapped) f = tables[p - 1][f];
        auto it = lookup[p].find(mapped);
        if (it == lookup[p].end())
          throw std::invalid_argument(
              "SimplicialAction: element does not induce a simplicial map (dimension " +
              std::to_string(p) + ", simplex " + std::to_string(i) + ")");
        if (hit[it->second])
          throw std::invalid_argument("SimplicialAction: induced map is not injective");
        hit[it->second] = 1;
        tables[p][i] = it->second;
      }
    }
  }
  return act;
}

std::vector<std::vector<int>> orbits(const SimplicialAction& action, int p) {
  int count = action.complex().simplex_count(p);
  const auto& g = action.group();
  std::vector<int> orbit_of(count, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < count; ++s) {
    if (orbit_of[s] >= 0) continue;
    std::set<int> orbit;
    std::deque<int> queue{s};
    orbit.insert(s);
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (long long e = 0; e < g.size(); ++e) {
        int img = action.apply(static_cast<int>(e), p, cur);
        if (orbit.insert(img).second) queue.push_back(img);
      }
    }
    int id = static_cast<int>(out.size());
    for (int x : orbit) orbit_of[x] = id;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

FinitePermGroup stabilizer(const SimplicialAction& action, int p, int simplex, bool pointwise) {
  const auto& g = action.group();
  const auto& verts = action.complex().vertices_of(p, simplex);
  std::vector<Perm> members;
  for (long long e = 0; e < g.size(); ++e) {
    bool keep;
    if (pointwise) {
      keep = true;
      for (int v : verts)
        if (action.apply(static_cast<int>(e), 0, v) != v) {
          keep = false;
          break;
        }
    } else {
      keep = action.apply(static_cast<int>(e), p, simplex) == simplex;
    }
    if (keep) members.push_back(g.element(static_cast<int>(e)));
  }
  std::vector<std::string> labels = g.labels();
  return FinitePermGroup::from_elements(g.degree(), std::move(members), std::move(labels),
                                        std::max(kDefaultElementCap, g.size()));
}

std::optional<InversionWitness> find_inversion(const SimplicialAction& action) {
  const auto& g = action.group();
  const auto& x = action.complex();
  for (long long e = 0; e < g.size(); ++e) {
    for (int p = 1; p <= x.dimension(); ++p) {
      for (int s = 0; s < x.simplex_count(p); ++s) {
        if (action.apply(static_cast<int>(e), p, s) != s) continue;
        for (int v : x.vertices_of(p, s))
          if (action.apply(static_cast<int>(e), 0, v) != v)
            return InversionWitness{static_cast<int>(e), p, s};
      }
    }
  }
  return std::nullopt;
}

bool is_without_inversions(const SimplicialAction& action) {
  return !find_inversion(action).has_value();
}

}  // namespace homstab::groups
