#include "coxrig/perm_model.hpp"

#include <cmath>
#include <unordered_map>

#include "coxrig/classification.hpp"
#include "coxrig/errors.hpp"

namespace coxrig {

namespace {

using Images = std::vector<Permutation::Point>;

// Swap of points a and b (and c, d when given) on `degree` points.
Images swap_images(std::size_t degree, std::size_t a, std::size_t b) {
  Images img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Permutation::Point>(i);
  std::swap(img[a], img[b]);
  return img;
}

Images double_swap(std::size_t degree, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  auto img = swap_images(degree, a, b);
  std::swap(img[c], img[d]);
  return img;
}

// Local models indexed by template node.
std::vector<Images> type_a(unsigned n) {
  std::vector<Images> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(swap_images(n + 1, k, k + 1));
  return out;
}

std::vector<Images> dihedral(unsigned m) {
  Images s(m), t(m);
  for (unsigned i = 0; i < m; ++i) {
    s[i] = static_cast<Permutation::Point>((m - i) % m);
    t[i] = static_cast<Permutation::Point>((m + 1 - i) % m);
  }
  return {s, t};
}

// Coordinates 0..n-1 are +k, points n..2n-1 are -k.
std::vector<Images> type_b(unsigned n) {
  std::vector<Images> out{swap_images(2 * n, 0, n)};
  for (std::size_t k = 1; k < n; ++k) out.push_back(double_swap(2 * n, k - 1, k, n + k - 1, n + k));
  return out;
}

std::vector<Images> type_d(unsigned n) {
  // Template path 0..n-2 runs from s_{n-2} down to s_0; node n-1 is the
  // sign-changing swap of coordinates 0 and 1.
  std::vector<Images> out(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t i = n - 2 - k;
    out[k] = double_swap(2 * n, i, i + 1, n + i, n + i + 1);
  }
  out[n - 1] = double_swap(2 * n, 0, n + 1, 1, n);
  return out;
}

std::vector<Images> regular(const CoxeterMatrix& tmpl, std::size_t size) {
  auto elements = enumerate_elements(tmpl, size + 1);
  if (!elements || elements->size() != size) throw std::logic_error("regular representation enumeration failed");
  auto key = [](const GeometricMatrix& g) {
    std::vector<long long> k;
    for (double x : g.entries) k.push_back(std::llround(x * 1e9));
    return k;
  };
  std::map<std::vector<long long>, std::size_t> index;
  for (std::size_t i = 0; i < elements->size(); ++i) index.emplace(key((*elements)[i]), i);
  std::vector<Images> out;
  for (std::size_t s = 0; s < tmpl.rank(); ++s) {
    auto refl = reflection_matrix(tmpl, s);
    Images img(size);
    for (std::size_t i = 0; i < size; ++i) img[i] = static_cast<Permutation::Point>(index.at(key(refl * (*elements)[i])));
    out.push_back(std::move(img));
  }
  return out;
}

std::optional<std::vector<Images>> template_model(const FiniteType& t) {
  using F = FiniteType::Family;
  switch (t.family) {
    case F::kA: return type_a(t.rank);
    case F::kB: return t.rank == 2 ? dihedral(4) : type_b(t.rank);
    case F::kD: return type_d(t.rank);
    case F::kI: return dihedral(t.m);
    case F::kH:
      if (t.rank == 3) return regular(finite_template(t), 120);
      return std::nullopt;
    case F::kF: return regular(finite_template(t), 1152);
    case F::kE: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<FinGroup> coxeter_perm_model(const CoxeterMatrix& m, std::size_t bound) {
  struct Piece {
    GenSubset component;
    std::vector<std::size_t> local_to_template;
    std::vector<Images> images;
    std::size_t degree;
  };
  std::vector<Piece> pieces;
  std::size_t total = 0;
  for (auto c : irreducible_components(m)) {
    auto sub = induced_system(m, c);
    auto ty = spherical_type(sub.matrix);
    if (!ty) throw UnsupportedType("component " + c.to_string() + " is infinite");
    auto model = template_model(*ty);
    if (!model) return std::nullopt;
    std::vector<std::size_t> map(sub.matrix.rank(), 0);
    if (sub.matrix.rank() > 1) {
      auto iso = find_isomorphism(sub.matrix, finite_template(*ty));
      if (!iso) throw std::logic_error("type recognised without a template isomorphism");
      map = *iso;
    }
    std::size_t deg = model->front().size();
    pieces.push_back({c, map, std::move(*model), deg});
    total += deg;
  }

  std::vector<Permutation> gens(m.rank());
  std::size_t offset = 0;
  for (const auto& piece : pieces) {
    auto members = piece.component.indices();
    for (std::size_t local = 0; local < members.size(); ++local) {
      Images img(total);
      for (std::size_t i = 0; i < total; ++i) img[i] = static_cast<Permutation::Point>(i);
      const auto& loc = piece.images[piece.local_to_template[local]];
      for (std::size_t i = 0; i < loc.size(); ++i) img[offset + i] = static_cast<Permutation::Point>(offset + loc[i]);
      gens[members[local]] = Permutation(std::move(img));
    }
    offset += piece.degree;
  }
  return FinGroup(std::move(gens), total, bound);
}

}  // namespace coxrig
