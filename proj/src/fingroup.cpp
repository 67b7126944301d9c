#include "coxrig/fingroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "coxrig/errors.hpp"

namespace coxrig {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

FinGroup::FinGroup(std::vector<Permutation> generators, std::size_t degree, std::size_t bound)
    : generators_(std::move(generators)), degree_(degree), bound_(bound), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw std::invalid_argument("generator degree does not match group degree");
}

void FinGroup::materialize() const {
  std::call_once(cache_->once, [this] {
    std::vector<Permutation> elements{identity()};
    std::unordered_map<Permutation, std::size_t, PermutationHash> index{{elements[0], 0}};
    std::vector<std::pair<std::size_t, std::size_t>> parent{{0, 0}};
    for (std::size_t h = 0; h < elements.size(); ++h) {
      for (std::size_t s = 0; s < generators_.size(); ++s) {
        auto next = elements[h] * generators_[s];
        if (index.count(next)) continue;
        if (elements.size() >= bound_)
          throw OrderBoundExceeded("group order exceeds bound " + std::to_string(bound_));
        index.emplace(next, elements.size());
        parent.emplace_back(h, s);
        elements.push_back(std::move(next));
      }
    }
    cache_->elements = std::move(elements);
    cache_->index = std::move(index);
    cache_->parent = std::move(parent);
    cache_->done = true;
  });
}

const std::vector<Permutation>& FinGroup::elements() const {
  materialize();
  return cache_->elements;
}

bool FinGroup::materialized() const { return cache_->done; }

bool FinGroup::contains(const Permutation& p) const { return index_of(p).has_value(); }

std::optional<std::size_t> FinGroup::index_of(const Permutation& p) const {
  materialize();
  auto it = cache_->index.find(p);
  if (it == cache_->index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FinGroup::word_of(std::size_t element_index) const {
  materialize();
  std::vector<std::size_t> word;
  for (auto i = element_index; i != 0; i = cache_->parent[i].first) word.push_back(cache_->parent[i].second);
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<Permutation> FinGroup::sorted_elements() const {
  auto out = elements();
  std::sort(out.begin(), out.end());
  return out;
}

bool FinGroup::same_subgroup(const FinGroup& other) const {
  if (order() != other.order()) return false;
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

const std::vector<Permutation>& closure(const FinGroup& g) { return g.elements(); }

FinGroup subgroup_from_elements(const std::vector<Permutation>& elements, std::size_t degree, std::size_t bound) {
  std::vector<Permutation> gens;
  FinGroup current({}, degree, bound);
  for (const auto& x : elements) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = FinGroup(gens, degree, bound);
  }
  return current;
}

bool is_subgroup(const FinGroup& h, const FinGroup& g) {
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

bool is_normal(const FinGroup& h, const FinGroup& g) {
  if (!is_subgroup(h, g)) return false;
  for (const auto& s : g.generators())
    for (const auto& x : h.generators())
      if (!h.contains(s.conjugate(x))) return false;
  return true;
}

namespace {

bool normalises(const Permutation& x, const FinGroup& h) {
  for (const auto& y : h.generators())
    if (!h.contains(x.conjugate(y))) return false;
  return true;
}

FinGroup normalizer_brute(const FinGroup& g, const FinGroup& h) {
  std::vector<Permutation> found;
  for (const auto& x : g.elements())
    if (normalises(x, h)) found.push_back(x);
  return subgroup_from_elements(found, g.degree(), g.bound());
}

std::vector<std::size_t> moved_points(const Permutation& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p(i) != i) out.push_back(i);
  return out;
}

Permutation product_of(const std::vector<Permutation>& parts, std::size_t degree) {
  Permutation out(degree);
  for (const auto& p : parts) out = out * p;
  return out;
}

// Blocks of G merged so that each listed subgroup is generated by
// generators living inside single parts.
struct ProductFrame {
  std::vector<std::vector<std::size_t>> points;
  std::vector<FinGroup> ambient;
  std::vector<std::vector<FinGroup>> subgroups;  // [which subgroup][part]
};

ProductFrame product_frame(const FinGroup& g, const std::vector<const FinGroup*>& subs) {
  auto blocks = decompose_blocks(g);
  const std::size_t nb = blocks.points.size();
  std::vector<std::size_t> block_of(g.degree(), nb);
  for (std::size_t b = 0; b < nb; ++b)
    for (auto p : blocks.points[b]) block_of[p] = b;

  std::vector<std::size_t> uf(nb);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (const auto* h : subs)
    for (const auto& x : h->generators()) {
      auto mp = moved_points(x);
      for (auto p : mp) {
        if (block_of[p] == nb) throw std::invalid_argument("subgroup moves points fixed by the ambient group");
        uf[find(block_of[p])] = find(block_of[mp[0]]);
      }
    }

  ProductFrame frame;
  std::vector<std::size_t> part_of_root(nb, nb);
  std::vector<std::vector<std::size_t>> part_gens;
  for (std::size_t b = 0; b < nb; ++b) {
    auto r = find(b);
    if (part_of_root[r] == nb) {
      part_of_root[r] = frame.points.size();
      frame.points.emplace_back();
      part_gens.emplace_back();
    }
    auto k = part_of_root[r];
    frame.points[k].insert(frame.points[k].end(), blocks.points[b].begin(), blocks.points[b].end());
    part_gens[k].insert(part_gens[k].end(), blocks.generator_indices[b].begin(), blocks.generator_indices[b].end());
  }
  std::vector<std::size_t> part_of_point(g.degree(), frame.points.size());
  for (std::size_t k = 0; k < frame.points.size(); ++k) {
    std::sort(frame.points[k].begin(), frame.points[k].end());
    for (auto p : frame.points[k]) part_of_point[p] = k;
    std::vector<Permutation> gens;
    for (auto i : part_gens[k]) gens.push_back(g.generators()[i]);
    frame.ambient.emplace_back(gens, g.degree(), g.bound());
  }
  for (const auto* h : subs) {
    std::vector<std::vector<Permutation>> gens(frame.points.size());
    for (const auto& x : h->generators()) {
      auto mp = moved_points(x);
      if (!mp.empty()) gens[part_of_point[mp[0]]].push_back(x);
    }
    std::vector<FinGroup> parts;
    for (auto& gs : gens) parts.emplace_back(std::move(gs), g.degree(), g.bound());
    frame.subgroups.push_back(std::move(parts));
  }
  return frame;
}

// Cartesian product of per-part choices, each combined by multiplication.
std::vector<Permutation> combine(const std::vector<std::vector<Permutation>>& choices, std::size_t degree) {
  std::vector<Permutation> out{Permutation(degree)};
  for (const auto& options : choices) {
    std::vector<Permutation> next;
    next.reserve(out.size() * options.size());
    for (const auto& base : out)
      for (const auto& o : options) next.push_back(base * o);
    out = std::move(next);
  }
  return out;
}

}  // namespace

FinGroup normalizer(const FinGroup& g, const FinGroup& h) {
  if (h.generators().empty()) return g;
  auto blocks = decompose_blocks(g);
  if (blocks.points.size() > 1) {
    bool product = true;
    std::vector<std::vector<Permutation>> proj(blocks.points.size());
    for (const auto& x : h.generators())
      for (std::size_t b = 0; b < blocks.points.size() && product; ++b) {
        auto r = restrict_to(x, blocks.points[b]);
        if (r.is_identity()) continue;
        if (!h.contains(r)) product = false;
        proj[b].push_back(r);
      }
    if (product) {
      std::vector<Permutation> gens;
      for (std::size_t b = 0; b < blocks.points.size(); ++b) {
        FinGroup hb(proj[b], g.degree(), g.bound());
        auto nb = normalizer_brute(blocks.factors[b], hb);
        gens.insert(gens.end(), nb.generators().begin(), nb.generators().end());
      }
      return FinGroup(gens, g.degree(), g.bound());
    }
  }
  return normalizer_brute(g, h);
}

FinGroup centralizer(const FinGroup& g, const FinGroup& h) {
  std::vector<Permutation> found;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& y : h.generators())
      if (x * y != y * x) {
        ok = false;
        break;
      }
    if (ok) found.push_back(x);
  }
  return subgroup_from_elements(found, g.degree(), g.bound());
}

FinGroup center(const FinGroup& g) { return centralizer(g, g); }

namespace {

FinGroup normal_closure_of(const FinGroup& ambient, std::vector<Permutation> gens) {
  std::erase_if(gens, [](const Permutation& p) { return p.is_identity(); });
  FinGroup h(gens, ambient.degree(), ambient.bound());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& s : ambient.generators()) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto z = s.conjugate(gens[i]);
        if (h.contains(z)) continue;
        gens.push_back(z);
        h = FinGroup(gens, ambient.degree(), ambient.bound());
        changed = true;
      }
    }
  }
  return h;
}

bool generators_commute(const FinGroup& a, const FinGroup& b) {
  for (const auto& x : a.generators())
    for (const auto& y : b.generators())
      if (x * y != y * x) return false;
  return true;
}

}  // namespace

FinGroup normal_closure(const FinGroup& g, const Permutation& x) { return normal_closure_of(g, {x}); }

FinGroup commutator_subgroup(const FinGroup& a, const FinGroup& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  FinGroup ambient(gens, a.degree(), a.bound());
  std::vector<Permutation> comms;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) comms.push_back(x * y * x.inverse() * y.inverse());
  return normal_closure_of(ambient, comms);
}

FinGroup diamond(const FinGroup& g, const Permutation& x, const Permutation& y) {
  return commutator_subgroup(normal_closure(g, x), normal_closure(g, y));
}

bool orthogonal(const FinGroup& g, const Permutation& x, const Permutation& y) {
  return generators_commute(normal_closure(g, x), normal_closure(g, y));
}

DomainReport domain_report(const FinGroup& g, const std::vector<std::pair<Permutation, Permutation>>& comp_pairs) {
  const auto& elems = g.elements();
  // Normal closures depend only on the conjugacy class.
  std::vector<std::size_t> class_of(elems.size(), elems.size());
  std::vector<FinGroup> closures;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (class_of[i] != elems.size()) continue;
    auto cls = closures.size();
    for (const auto& c : elems) class_of[*g.index_of(c.conjugate(elems[i]))] = cls;
    closures.push_back(normal_closure(g, elems[i]));
  }
  const std::size_t nc = closures.size();
  std::vector<char> perp(nc * nc);
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = a; b < nc; ++b)
      perp[a * nc + b] = perp[b * nc + a] = generators_commute(closures[a], closures[b]);
  auto is_perp = [&](std::size_t i, std::size_t j) { return perp[class_of[i] * nc + class_of[j]] != 0; };

  DomainReport report;
  for (std::size_t i = 1; i < elems.size() && report.is_domain; ++i)
    for (std::size_t j = 1; j < elems.size(); ++j)
      if (is_perp(i, j)) {
        report.is_domain = false;
        report.zero_divisor_witness = std::make_pair(elems[i], elems[j]);
        break;
      }
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (is_perp(i, i)) report.self_orthogonal.push_back(elems[i]);
  std::sort(report.self_orthogonal.begin(), report.self_orthogonal.end());
  for (const auto& [x, z] : comp_pairs) {
    auto xi = g.index_of(x), zi = g.index_of(z);
    if (!xi || !zi) throw std::invalid_argument("Comp arguments must lie in the group");
    bool holds = true;
    for (std::size_t y = 0; y < elems.size() && holds; ++y)
      if (is_perp(y, *zi) && !is_perp(*xi, y)) holds = false;
    report.comp.push_back({{x, z}, holds});
  }
  return report;
}

std::vector<Permutation> perm_action_on_marked_set(const std::vector<Permutation>& elements,
                                                   const std::vector<Permutation>& marked) {
  std::unordered_map<Permutation, std::size_t, PermutationHash> where;
  for (std::size_t i = 0; i < marked.size(); ++i) where.emplace(marked[i], i);
  std::set<Permutation> images;
  for (const auto& n : elements) {
    std::vector<Permutation::Point> img(marked.size());
    for (std::size_t i = 0; i < marked.size(); ++i) {
      auto it = where.find(n.conjugate(marked[i]));
      if (it == where.end())
        throw NotInvariant("conjugation by " + n.to_cycles() + " moves " + marked[i].to_cycles() +
                           " outside the marked set");
      img[i] = static_cast<Permutation::Point>(it->second);
    }
    images.insert(Permutation(std::move(img)));
  }
  return {images.begin(), images.end()};
}

BlockDecomposition decompose_blocks(const FinGroup& g) {
  const std::size_t d = g.degree();
  std::vector<std::size_t> uf(d);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  std::vector<bool> moved(d, false);
  for (const auto& x : g.generators()) {
    auto mp = moved_points(x);
    for (auto p : mp) {
      moved[p] = true;
      uf[find(p)] = find(mp[0]);
    }
  }
  BlockDecomposition out;
  std::vector<std::size_t> block_of_root(d, d);
  for (std::size_t p = 0; p < d; ++p) {
    if (!moved[p]) continue;
    auto r = find(p);
    if (block_of_root[r] == d) {
      block_of_root[r] = out.points.size();
      out.points.emplace_back();
      out.generator_indices.emplace_back();
    }
    out.points[block_of_root[r]].push_back(p);
  }
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    auto mp = moved_points(g.generators()[i]);
    if (!mp.empty()) out.generator_indices[block_of_root[find(mp[0])]].push_back(i);
  }
  for (const auto& idx : out.generator_indices) {
    std::vector<Permutation> gens;
    for (auto i : idx) gens.push_back(g.generators()[i]);
    out.factors.emplace_back(gens, d, g.bound());
  }
  return out;
}

Permutation restrict_to(const Permutation& p, const std::vector<std::size_t>& points) {
  auto img = Permutation(p.degree()).images();
  for (auto q : points) img[q] = p(q);
  return Permutation(std::move(img));
}

std::vector<Permutation> left_transversal(const FinGroup& g, const FinGroup& h) {
  auto frame = product_frame(g, {&h});
  std::vector<std::vector<Permutation>> choices;
  for (std::size_t k = 0; k < frame.points.size(); ++k) {
    const auto& hk = frame.subgroups[0][k];
    auto elems = frame.ambient[k].sorted_elements();
    std::vector<Permutation> reps;
    if (hk.generators().empty()) {
      reps = std::move(elems);
    } else {
      PermSet covered;
      for (const auto& x : elems) {
        if (covered.count(x)) continue;
        reps.push_back(x);
        for (const auto& y : hk.elements()) covered.insert(x * y);
      }
    }
    choices.push_back(std::move(reps));
  }
  auto out = combine(choices, g.degree());
  std::sort(out.begin(), out.end());
  return out;
}

Permutation coset_representative(const FinGroup& g, const FinGroup& h, const Permutation& x) {
  auto frame = product_frame(g, {&h});
  std::vector<Permutation> parts;
  for (std::size_t k = 0; k < frame.points.size(); ++k) {
    auto xk = restrict_to(x, frame.points[k]);
    auto best = xk;
    for (const auto& y : frame.subgroups[0][k].elements()) best = std::min(best, xk * y);
    parts.push_back(best);
  }
  return product_of(parts, g.degree());
}

ConjugateForm canonical_conjugate(const FinGroup& g, const FinGroup& h) {
  auto frame = product_frame(g, {&h});
  std::vector<Permutation> conjugators;
  std::vector<Permutation> gens;
  for (std::size_t k = 0; k < frame.points.size(); ++k) {
    const auto& hk = frame.subgroups[0][k];
    if (hk.generators().empty()) continue;
    std::vector<Permutation> best;
    Permutation best_c;
    for (const auto& c : frame.ambient[k].sorted_elements()) {
      auto ci = c.inverse();
      std::vector<Permutation> conj;
      conj.reserve(hk.order());
      for (const auto& y : hk.elements()) conj.push_back(ci.conjugate(y));
      std::sort(conj.begin(), conj.end());
      if (best.empty() || conj < best) {
        best = std::move(conj);
        best_c = c;
      }
    }
    conjugators.push_back(best_c);
    auto sub = subgroup_from_elements(best, g.degree(), g.bound());
    gens.insert(gens.end(), sub.generators().begin(), sub.generators().end());
  }
  return {FinGroup(gens, g.degree(), g.bound()), product_of(conjugators, g.degree())};
}

std::vector<Permutation> transporter_double_cosets(const FinGroup& g, const FinGroup& h, const FinGroup& f) {
  auto frame = product_frame(g, {&h, &f});
  std::vector<std::vector<Permutation>> choices;
  for (std::size_t k = 0; k < frame.points.size(); ++k) {
    const auto& hk = frame.subgroups[0][k];
    const auto& fk = frame.subgroups[1][k];
    if (hk.generators().empty() && fk.generators().empty()) {
      choices.push_back({Permutation(g.degree())});
      continue;
    }
    const auto& gk = frame.ambient[k];
    std::vector<Permutation> nk;
    for (const auto& x : gk.elements())
      if (normalises(x, hk)) nk.push_back(x);
    std::vector<Permutation> reps;
    PermSet covered;
    for (const auto& t : gk.sorted_elements()) {
      if (covered.count(t)) continue;
      auto ti = t.inverse();
      bool inside = true;
      for (const auto& y : hk.generators())
        if (!fk.contains(ti.conjugate(y))) {
          inside = false;
          break;
        }
      if (!inside) continue;
      reps.push_back(t);
      for (const auto& n : nk)
        for (const auto& y : fk.elements()) covered.insert(n * t * y);
    }
    choices.push_back(std::move(reps));
  }
  auto out = combine(choices, g.degree());
  std::sort(out.begin(), out.end());
  return out;
}

Permutation conjugation_action(const FinGroup& g, const Permutation& x) {
  const auto& elems = g.elements();
  std::vector<Permutation::Point> img(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto j = g.index_of(x.conjugate(elems[i]));
    if (!j) throw NotInvariant("conjugating element does not normalise the group");
    img[i] = static_cast<Permutation::Point>(*j);
  }
  return Permutation(std::move(img));
}

namespace {

class AutomorphismSearch {
 public:
  AutomorphismSearch(const FinGroup& g, std::size_t bound) {
    if (g.order() > bound)
      throw OrderBoundExceeded("automorphism search needs |G| <= " + std::to_string(bound));
    elems_ = g.elements();
    n_ = elems_.size();
    mul_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) mul_[i * n_ + j] = *g.index_of(elems_[i] * elems_[j]);
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = elems_[i].order();
    auto basis_group = subgroup_from_elements(elems_, g.degree(), g.bound());
    for (const auto& b : basis_group.generators()) basis_.push_back(*g.index_of(b));
  }

  const std::vector<Permutation>& elements() const { return elems_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Runs the orbit-stabiliser tower. `visit` sees every transversal element;
  // returning false stops the search.
  std::uint64_t tower(const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    std::uint64_t total = 1;
    const std::size_t k = basis_.size();
    for (std::size_t level = 0; level < k; ++level) {
      std::uint64_t count = 0;
      for (std::size_t x = 0; x < n_; ++x) {
        if (order_[x] != order_[basis_[level]]) continue;
        std::vector<std::size_t> img(basis_.begin(), basis_.begin() + static_cast<std::ptrdiff_t>(level));
        img.push_back(x);
        std::vector<std::size_t> phi;
        if (!complete(img, phi)) continue;
        ++count;
        if (x != basis_[level] && !visit(phi)) return 0;
      }
      total *= count;
    }
    return total;
  }

 private:
  // Hom on <basis[0..img.size())> sending basis[i] to img[i]; empty if the
  // assignment does not extend injectively.
  bool partial(const std::vector<std::size_t>& img, std::vector<std::size_t>& phi) const {
    const std::size_t none = n_;
    phi.assign(n_, none);
    std::vector<bool> used(n_, false);
    phi[0] = 0;
    used[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      auto e = queue[h];
      for (std::size_t j = 0; j < img.size(); ++j) {
        auto f = mul_[e * n_ + basis_[j]];
        auto target = mul_[phi[e] * n_ + img[j]];
        if (phi[f] == none) {
          if (used[target]) return false;
          phi[f] = target;
          used[target] = true;
          queue.push_back(f);
        } else if (phi[f] != target) {
          return false;
        }
      }
    }
    return true;
  }

  bool complete(std::vector<std::size_t>& img, std::vector<std::size_t>& phi) const {
    if (!partial(img, phi)) return false;
    if (img.size() == basis_.size()) return true;
    auto level = img.size();
    for (std::size_t x = 0; x < n_; ++x) {
      if (order_[x] != order_[basis_[level]]) continue;
      img.push_back(x);
      if (complete(img, phi)) return true;
      img.pop_back();
    }
    return false;
  }

  std::vector<Permutation> elems_;
  std::size_t n_ = 0;
  std::vector<std::size_t> mul_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> basis_;
};

Permutation as_index_permutation(const std::vector<std::size_t>& phi) {
  std::vector<Permutation::Point> img(phi.begin(), phi.end());
  return Permutation(std::move(img));
}

FinGroup inner_automorphisms(const FinGroup& g) {
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(conjugation_action(g, s));
  return FinGroup(gens, g.order());
}

}  // namespace

AutomorphismGroup automorphism_group(const FinGroup& g, std::size_t bound) {
  AutomorphismSearch search(g, bound);
  AutomorphismGroup out;
  out.elements = search.elements();
  out.basis = search.basis();
  out.order = search.tower([&](const std::vector<std::size_t>& phi) {
    out.generators.push_back(as_index_permutation(phi));
    return true;
  });
  out.inner = inner_automorphisms(g);
  out.out_trivial = out.order == out.inner.order();
  return out;
}

std::optional<std::vector<Permutation>> has_outer_automorphism(const FinGroup& g, std::size_t bound) {
  AutomorphismSearch search(g, bound);
  auto inner = inner_automorphisms(g);
  std::optional<std::vector<Permutation>> witness;
  search.tower([&](const std::vector<std::size_t>& phi) {
    if (inner.contains(as_index_permutation(phi))) return true;
    std::vector<Permutation> images;
    for (auto j : phi) images.push_back(search.elements()[j]);
    witness = std::move(images);
    return false;
  });
  return witness;
}

// ---- matrices --------------------------------------------------------------

Mat2ModP Mat2ModP::operator*(const Mat2ModP& o) const {
  if (o.p != p) throw std::invalid_argument("matrices over different primes");
  return {p, (a * o.a + b * o.c) % p, (a * o.b + b * o.d) % p, (c * o.a + d * o.c) % p, (c * o.b + d * o.d) % p};
}

std::uint64_t Mat2ModP::det() const { return (a * d % p + p - b * c % p) % p; }

namespace {

std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1U) r = r * x % p;
    x = x * x % p;
    e >>= 1U;
  }
  return r;
}

}  // namespace

Mat2ModP Mat2ModP::inverse() const {
  auto dt = det();
  if (dt == 0) throw NotInvertible("matrix " + to_string() + " is singular mod " + std::to_string(p));
  auto inv = pow_mod(dt, p - 2, p);
  return {p, d * inv % p, (p - b) % p * inv % p, (p - c) % p * inv % p, a * inv % p};
}

Mat2ModP Mat2ModP::pow(std::int64_t k) const {
  Mat2ModP base = k < 0 ? inverse() : *this;
  auto e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  auto r = identity(p);
  while (e) {
    if (e & 1U) r = r * base;
    base = base * base;
    e >>= 1U;
  }
  return r;
}

std::uint64_t Mat2ModP::order() const {
  if (det() == 0) throw NotInvertible("singular matrix has no multiplicative order");
  auto x = *this;
  std::uint64_t k = 1;
  while (!(x == identity(p))) {
    x = x * *this;
    ++k;
  }
  return k;
}

std::string Mat2ModP::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

Mat2ModP evaluate_matrix_product(std::uint64_t p, const std::map<std::string, Mat2ModP>& named,
                                 const std::string& expr) {
  std::istringstream in(expr);
  std::string tok;
  auto acc = Mat2ModP::identity(p);
  while (in >> tok) {
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    std::int64_t power = 1;
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        power = std::stoll(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw ParseError("bad exponent in " + tok);
      } catch (const std::logic_error&) {
        throw ParseError("bad exponent in " + tok);
      }
    }
    Mat2ModP base = Mat2ModP::identity(p);
    if (name != "I") {
      auto it = named.find(name);
      if (it == named.end()) throw ParseError("unknown matrix " + name);
      base = it->second;
    }
    acc = acc * base.pow(power);
  }
  return acc;
}

std::vector<bool> matrix_mod_p_check(std::uint64_t p, const std::map<std::string, Mat2ModP>& named,
                                     const std::vector<MatrixClaim>& claims) {
  std::vector<bool> out;
  for (const auto& c : claims) {
    bool eq = evaluate_matrix_product(p, named, c.lhs) == evaluate_matrix_product(p, named, c.rhs);
    out.push_back(eq == c.expect_equal);
  }
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t p) {
  x %= p;
  if (x == 0) throw NotInvertible("0 has no multiplicative order");
  std::uint64_t k = 1;
  for (auto y = x; y != 1 % p; y = y * x % p) ++k;
  return k;
}

}  // namespace coxrig
