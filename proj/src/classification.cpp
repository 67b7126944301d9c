#include "coxrig/classification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "coxrig/errors.hpp"

namespace coxrig {

namespace {

CoxeterMatrix path_matrix(std::size_t n, const std::vector<Label>& labels) {
  CoxeterMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, labels.empty() ? 3 : labels[i]);
  return m;
}

// Three arms of the given lengths meeting at a centre (node 0).
CoxeterMatrix star_matrix(const std::vector<std::size_t>& arms) {
  std::size_t n = 1;
  for (auto a : arms) n += a;
  CoxeterMatrix m(n);
  std::size_t next = 1;
  for (auto a : arms) {
    std::size_t prev = 0;
    for (std::size_t k = 0; k < a; ++k) {
      m.set(prev, next, 3);
      prev = next++;
    }
  }
  return m;
}

std::vector<Label> incident_labels(const CoxeterMatrix& m, std::size_t v) {
  std::vector<Label> out;
  for (std::size_t u = 0; u < m.rank(); ++u)
    if (u != v && m(u, v) != 2) out.push_back(m(u, v));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const CoxeterMatrix& m) {
  return DiagramGraph::cox_diagram(m).components(m.all()).size() <= 1;
}

bool has_infinite_label(const CoxeterMatrix& m) {
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = i + 1; j < m.rank(); ++j)
      if (is_infinite(m(i, j))) return true;
  return false;
}

std::size_t edge_count(const CoxeterMatrix& m) {
  std::size_t e = 0;
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = i + 1; j < m.rank(); ++j)
      if (m(i, j) != 2) ++e;
  return e;
}

Order factorial(unsigned n) {
  Order r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

std::string FiniteType::name() const {
  switch (family) {
    case Family::kA: return "A" + std::to_string(rank);
    case Family::kB: return "B" + std::to_string(rank);
    case Family::kD: return "D" + std::to_string(rank);
    case Family::kE: return "E" + std::to_string(rank);
    case Family::kF: return "F4";
    case Family::kH: return "H" + std::to_string(rank);
    case Family::kI: return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

std::string AffineType::name() const {
  static constexpr const char* letters = "ABCDEFG";
  return std::string("~") + letters[static_cast<int>(family)] + std::to_string(n);
}

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::kSpherical: return "Spherical";
    case ComponentKind::kAffine: return "Affine";
    case ComponentKind::kNonElementaryHyperbolic: return "NonElementaryHyperbolic";
    case ComponentKind::kOtherInfinite: return "OtherInfinite";
  }
  return "?";
}

CoxeterMatrix finite_template(const FiniteType& t) {
  const std::size_t n = t.rank;
  switch (t.family) {
    case FiniteType::Family::kA: return path_matrix(n, {});
    case FiniteType::Family::kB: {
      auto m = path_matrix(n, {});
      m.set(0, 1, 4);
      return m;
    }
    case FiniteType::Family::kD: {
      CoxeterMatrix out(n);
      for (std::size_t i = 0; i + 2 < n; ++i) out.set(i, i + 1, 3);
      out.set(n - 3, n - 1, 3);
      return out;
    }
    case FiniteType::Family::kE: {
      CoxeterMatrix out(n);
      for (std::size_t i = 0; i + 2 < n; ++i) out.set(i, i + 1, 3);
      out.set(2, n - 1, 3);
      return out;
    }
    case FiniteType::Family::kF: return path_matrix(4, {3, 4, 3});
    case FiniteType::Family::kH: {
      auto m = path_matrix(n, {});
      m.set(0, 1, 5);
      return m;
    }
    case FiniteType::Family::kI: return path_matrix(2, {t.m});
  }
  throw UnsupportedType("unknown finite family");
}

CoxeterMatrix affine_template(const AffineType& t) {
  const std::size_t n = t.n;
  const std::size_t r = n + 1;
  switch (t.family) {
    case AffineType::Family::kA: {
      if (n == 1) return path_matrix(2, {kInfinity});
      auto m = path_matrix(r, {});
      m.set(0, n, 3);
      return m;
    }
    case AffineType::Family::kB: {
      auto m = path_matrix(n, {});
      m.set(n - 2, n - 1, 4);
      CoxeterMatrix out(r);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (m(i, j) != 2) out.set(i, j, m(i, j));
      out.set(1, n, 3);
      return out;
    }
    case AffineType::Family::kC: {
      auto m = path_matrix(r, {});
      m.set(0, 1, 4);
      m.set(n - 1, n, 4);
      return m;
    }
    case AffineType::Family::kD: {
      CoxeterMatrix out(r);
      for (std::size_t i = 0; i + 2 < n; ++i) out.set(i, i + 1, 3);
      out.set(1, n - 1, 3);
      out.set(n - 3, n, 3);
      return out;
    }
    case AffineType::Family::kE:
      if (n == 6) return star_matrix({2, 2, 2});
      if (n == 7) return star_matrix({1, 3, 3});
      return star_matrix({1, 2, 5});
    case AffineType::Family::kF: return path_matrix(5, {3, 3, 4, 3});
    case AffineType::Family::kG: return path_matrix(3, {3, 6});
  }
  throw UnsupportedType("unknown affine family");
}

std::optional<std::vector<std::size_t>> find_isomorphism(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  const std::size_t n = a.rank();
  if (b.rank() != n) return std::nullopt;
  std::vector<std::vector<Label>> inv_a(n), inv_b(n);
  for (std::size_t v = 0; v < n; ++v) {
    inv_a[v] = incident_labels(a, v);
    inv_b[v] = incident_labels(b, v);
  }
  {
    auto sa = inv_a, sb = inv_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  // Breadth-first vertex order keeps every new vertex adjacent to an
  // assigned one where possible, so consistency checks prune early.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (placed[root]) continue;
    std::vector<std::size_t> queue{root};
    placed[root] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      auto v = queue[h];
      order.push_back(v);
      for (std::size_t u = 0; u < n; ++u)
        if (!placed[u] && u != v && a(u, v) != 2) {
          placed[u] = true;
          queue.push_back(u);
        }
    }
  }

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    auto v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || inv_b[w] != inv_a[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        auto u = order[d];
        ok = b(map[u], w) == a(u, v);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (self(self, depth + 1)) return true;
      used[w] = false;
    }
    map[v] = n;
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

std::optional<FiniteType> spherical_type(const CoxeterMatrix& m) {
  const std::size_t r = m.rank();
  if (r == 0 || !is_connected(m)) throw NotIrreducible("spherical_type needs an irreducible system");
  if (r == 1) return FiniteType::A(1);
  if (has_infinite_label(m)) return std::nullopt;
  if (r == 2) {
    auto l = m(0, 1);
    if (l == 3) return FiniteType::A(2);
    if (l == 4) return FiniteType::B(2);
    return FiniteType::I2(l);
  }
  if (edge_count(m) != r - 1) return std::nullopt;
  std::vector<FiniteType> candidates{FiniteType::A(static_cast<unsigned>(r)), FiniteType::B(static_cast<unsigned>(r))};
  if (r >= 4) candidates.push_back(FiniteType::D(static_cast<unsigned>(r)));
  if (r >= 6 && r <= 8) candidates.push_back(FiniteType::E(static_cast<unsigned>(r)));
  if (r == 4) candidates.push_back(FiniteType::F4());
  if (r == 3 || r == 4) candidates.push_back(FiniteType::H(static_cast<unsigned>(r)));
  for (const auto& t : candidates)
    if (find_isomorphism(m, finite_template(t))) return t;
  return std::nullopt;
}

std::optional<AffineType> affine_type(const CoxeterMatrix& m) {
  const std::size_t r = m.rank();
  if (r == 0 || !is_connected(m)) throw NotIrreducible("affine_type needs an irreducible system");
  if (r == 1) return std::nullopt;
  if (r == 2) {
    if (is_infinite(m(0, 1))) return AffineType{AffineType::Family::kA, 1};
    return std::nullopt;
  }
  if (has_infinite_label(m)) return std::nullopt;
  const unsigned n = static_cast<unsigned>(r - 1);
  using F = AffineType::Family;
  std::vector<AffineType> candidates{{F::kA, n}, {F::kC, n}};
  if (n >= 3) candidates.push_back({F::kB, n});
  if (n >= 4) candidates.push_back({F::kD, n});
  if (n >= 6 && n <= 8) candidates.push_back({F::kE, n});
  if (n == 4) candidates.push_back({F::kF, 4});
  if (n == 2) candidates.push_back({F::kG, 2});
  for (const auto& t : candidates)
    if (find_isomorphism(m, affine_template(t))) return t;
  return std::nullopt;
}

Order finite_order(const FiniteType& t) {
  using F = FiniteType::Family;
  const unsigned n = t.rank;
  switch (t.family) {
    case F::kA: return factorial(n + 1);
    case F::kB: return (Order(1) << n) * factorial(n);
    case F::kD: return (Order(1) << (n - 1)) * factorial(n);
    case F::kE:
      if (n == 6) return 51840;
      if (n == 7) return 2903040;
      return 696729600;
    case F::kF: return 1152;
    case F::kH: return n == 3 ? 120 : 14400;
    case F::kI: return Order(2) * t.m;
  }
  return 0;
}

bool order_verified_at_desk_scale(const FiniteType& t) { return finite_order(t) <= kDeskVerifiedOrder; }

std::optional<Order> spherical_order(const CoxeterMatrix& m, GenSubset t) {
  if (!t.is_subset_of(m.all())) throw IndexOutOfRange("subset exceeds rank");
  Order total = 1;
  for (auto c : irreducible_components(m, t)) {
    if (c.size() == 1) {
      total *= 2;
      continue;
    }
    auto sub = induced_system(m, c);
    auto ty = spherical_type(sub.matrix);
    if (!ty) return std::nullopt;
    total *= finite_order(*ty);
  }
  return total;
}

bool is_spherical(const CoxeterMatrix& m, GenSubset t) { return spherical_order(m, t).has_value(); }

std::optional<Order> SphericityOracle::order(GenSubset t) {
  auto it = cache_.find(t.bits());
  if (it != cache_.end()) return it->second;
  auto result = spherical_order(matrix_, t);
  cache_.emplace(t.bits(), result);
  return result;
}

namespace {

bool finite_edges_to(const CoxeterMatrix& m, GenSubset t, std::size_t v) {
  for (auto u : t.indices())
    if (is_infinite(m(u, v))) return false;
  return true;
}

}  // namespace

void for_each_spherical_subset(SphericityOracle& oracle, GenSubset within,
                               const std::function<void(GenSubset)>& visit) {
  const auto& m = oracle.matrix();
  const auto members = within.indices();
  auto walk = [&](auto&& self, GenSubset t, std::size_t start) -> void {
    visit(t);
    for (std::size_t k = start; k < members.size(); ++k) {
      auto v = members[k];
      if (!finite_edges_to(m, t, v)) continue;
      auto next = t.with(v);
      if (oracle.spherical(next)) self(self, next, k + 1);
    }
  };
  walk(walk, GenSubset{}, 0);
}

std::vector<GenSubset> minimal_nonspherical_subsets(SphericityOracle& oracle, GenSubset within) {
  const auto members = within.indices();
  std::vector<GenSubset> out;
  for_each_spherical_subset(oracle, within, [&](GenSubset t) {
    // Each minimal U is found exactly once, from T = U minus its largest member.
    for (auto v : members) {
      if (!t.empty() && v <= t.max_index()) continue;
      auto u = t.with(v);
      if (oracle.spherical(u)) continue;
      bool minimal = true;
      for (auto x : t.indices())
        if (!oracle.spherical(u.without(x))) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(u);
    }
  });
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

MoussongResult moussong_hyperbolic(const CoxeterMatrix& m) {
  MoussongResult result;
  SphericityOracle oracle(m);
  auto minimal = minimal_nonspherical_subsets(oracle, m.all());
  // Irreducible affine systems are exactly the minimal non-spherical sets
  // that match an affine template, so scanning the minimal sets suffices.
  for (auto u : minimal) {
    if (u.size() < 3) continue;
    if (affine_type(induced_system(m, u).matrix)) {
      result.hyperbolic = false;
      result.affine_witness = u;
      return result;
    }
  }
  // Any infinite special subgroup contains a minimal non-spherical one.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    for (std::size_t j = i + 1; j < minimal.size(); ++j) {
      auto a = minimal[i], b = minimal[j];
      if (!(a & b).empty()) continue;
      bool commuting = true;
      for (auto x : a.indices()) {
        for (auto y : b.indices())
          if (m(x, y) != 2) {
            commuting = false;
            break;
          }
        if (!commuting) break;
      }
      if (commuting) {
        result.hyperbolic = false;
        result.commuting_witness = std::make_pair(a, b);
        return result;
      }
    }
  }
  return result;
}

Classification classify_components(const CoxeterMatrix& m) {
  Classification out;
  for (auto c : irreducible_components(m)) {
    ClassifiedComponent cc{c, {}};
    auto sub = induced_system(m, c).matrix;
    if (auto ft = spherical_type(sub)) {
      cc.cls.kind = ComponentKind::kSpherical;
      cc.cls.finite = ft;
      cc.cls.order = finite_order(*ft);
    } else if (auto at = affine_type(sub)) {
      cc.cls.kind = ComponentKind::kAffine;
      cc.cls.affine = at;
    } else if (moussong_hyperbolic(sub).hyperbolic) {
      cc.cls.kind = ComponentKind::kNonElementaryHyperbolic;
    } else {
      cc.cls.kind = ComponentKind::kOtherInfinite;
      out.theorem1_hypothesis = false;
    }
    out.components.push_back(std::move(cc));
  }
  return out;
}

GeometricMatrix GeometricMatrix::identity(std::size_t rank) {
  GeometricMatrix g{rank, std::vector<double>(rank * rank, 0.0)};
  for (std::size_t i = 0; i < rank; ++i) g.entries[i * rank + i] = 1.0;
  return g;
}

GeometricMatrix GeometricMatrix::operator*(const GeometricMatrix& rhs) const {
  GeometricMatrix out{rank, std::vector<double>(rank * rank, 0.0)};
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t k = 0; k < rank; ++k) {
      double a = entries[i * rank + k];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rank; ++j) out.entries[i * rank + j] += a * rhs.entries[k * rank + j];
    }
  return out;
}

std::vector<double> cosine_form(const CoxeterMatrix& m) {
  const std::size_t n = m.rank();
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto l = m(i, j);
      b[i * n + j] = is_infinite(l) ? -1.0 : -std::cos(std::numbers::pi / static_cast<double>(l));
    }
  return b;
}

GeometricMatrix reflection_matrix(const CoxeterMatrix& m, std::size_t s) {
  const std::size_t n = m.rank();
  auto b = cosine_form(m);
  auto g = GeometricMatrix::identity(n);
  for (std::size_t t = 0; t < n; ++t) g.entries[s * n + t] = (s == t ? 1.0 : 0.0) - 2.0 * b[s * n + t];
  return g;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

std::vector<long long> rounded_key(const GeometricMatrix& g) {
  static const double scale = std::pow(10.0, kGeometricDecimals);
  std::vector<long long> key(g.entries.size());
  for (std::size_t i = 0; i < key.size(); ++i) key[i] = std::llround(g.entries[i] * scale);
  return key;
}

}  // namespace

std::optional<std::vector<GeometricMatrix>> enumerate_elements(const CoxeterMatrix& m, std::size_t bound,
                                                               const std::vector<Permutation>* oracle) {
  const std::size_t n = m.rank();
  if (oracle && oracle->size() != n) throw std::invalid_argument("oracle needs one permutation per generator");
  std::vector<GeometricMatrix> refl;
  for (std::size_t s = 0; s < n; ++s) refl.push_back(reflection_matrix(m, s));

  std::vector<GeometricMatrix> elements{GeometricMatrix::identity(n)};
  std::vector<Permutation> perms;
  if (oracle) perms.push_back(Permutation(n == 0 ? 0 : (*oracle)[0].degree()));
  std::unordered_map<std::vector<long long>, std::size_t, KeyHash> index;
  index.emplace(rounded_key(elements[0]), 0);
  if (bound == 0) return std::nullopt;

  for (std::size_t h = 0; h < elements.size(); ++h) {
    for (std::size_t s = 0; s < n; ++s) {
      // Right multiplication by sigma_s only changes column entries through row s.
      const auto& g = elements[h];
      GeometricMatrix next = g;
      for (std::size_t i = 0; i < n; ++i) {
        double gis = g.entries[i * n + s];
        if (gis == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
          next.entries[i * n + j] += gis * (refl[s].entries[s * n + j] - (s == j ? 1.0 : 0.0));
      }
      auto key = rounded_key(next);
      auto it = index.find(key);
      if (it != index.end()) {
        if (oracle && perms[it->second] != perms[h] * (*oracle)[s])
          throw ToleranceCollision("geometric representatives collide for elements the permutation model separates");
        continue;
      }
      if (elements.size() >= bound) return std::nullopt;
      index.emplace(std::move(key), elements.size());
      if (oracle) perms.push_back(perms[h] * (*oracle)[s]);
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

FiniteSpecialSummary max_finite_special_order(const CoxeterMatrix& m) {
  SphericityOracle oracle(m);
  FiniteSpecialSummary out{1, {}};
  for_each_spherical_subset(oracle, m.all(), [&](GenSubset t) {
    auto o = *oracle.order(t);
    if (o > out.max_order) out.max_order = o;
    for (std::size_t v = 0; v < m.rank(); ++v)
      if (!t.contains(v) && finite_edges_to(m, t, v) && oracle.spherical(t.with(v))) return;
    out.maximal_sphericals.push_back(t);
  });
  std::sort(out.maximal_sphericals.begin(), out.maximal_sphericals.end(), lex_less);
  return out;
}

}  // namespace coxrig
