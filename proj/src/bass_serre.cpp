#include "coxrig/bass_serre.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "coxrig/errors.hpp"
#include "coxrig/perm_model.hpp"

namespace coxrig {

TreeOfFiniteGroups TreeOfFiniteGroups::from_splitting(const SplitTree& tree, std::size_t bound) {
  TreeOfFiniteGroups out;
  std::vector<InducedSystem> induced;
  for (const auto& node : tree.nodes) {
    if (!node.finite) throw UnsupportedType("vertex " + node.generators.to_string() + " is infinite");
    auto sub = induced_system(tree.matrix, node.generators);
    auto model = coxeter_perm_model(sub.matrix, bound);
    if (!model) throw UnsupportedType("no permutation model for vertex " + node.generators.to_string());
    out.vertex_groups.push_back(*model);
    out.vertex_names.push_back(node.generators.to_string());
    induced.push_back(std::move(sub));
  }
  auto local_index = [&](std::size_t node, std::size_t gen) {
    const auto& pi = induced[node].parent_index;
    return static_cast<std::size_t>(std::find(pi.begin(), pi.end(), gen) - pi.begin());
  };
  for (const auto& e : tree.edges) {
    Edge edge{e.from, e.to, {}, {}, e.generators.to_string()};
    for (auto s : e.generators.indices()) {
      edge.from_images.push_back(out.vertex_groups[e.from].generators()[local_index(e.from, s)]);
      edge.to_images.push_back(out.vertex_groups[e.to].generators()[local_index(e.to, s)]);
    }
    out.edges.push_back(std::move(edge));
  }
  out.validate();
  return out;
}

std::size_t TreeOfFiniteGroups::other_end(std::size_t edge, std::size_t vertex) const {
  const auto& e = edges[edge];
  return e.from == vertex ? e.to : e.from;
}

FinGroup TreeOfFiniteGroups::edge_group(std::size_t edge, std::size_t at_vertex) const {
  const auto& e = edges[edge];
  const auto& g = vertex_groups[at_vertex];
  return FinGroup(e.from == at_vertex ? e.from_images : e.to_images, g.degree(), g.bound());
}

ElementMap TreeOfFiniteGroups::edge_isomorphism(std::size_t edge, std::size_t from_vertex) const {
  const auto& e = edges[edge];
  const bool forward = e.from == from_vertex;
  const auto& src = forward ? e.from_images : e.to_images;
  const auto& dst = forward ? e.to_images : e.from_images;
  const auto& gs = vertex_groups[from_vertex];
  const auto& gd = vertex_groups[other_end(edge, from_vertex)];
  ElementMap map{{gs.identity(), gd.identity()}};
  std::unordered_map<Permutation, Permutation, PermutationHash> back{{gd.identity(), gs.identity()}};
  std::vector<Permutation> queue{gs.identity()};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    auto x = queue[h];
    auto y = map.at(x);
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto nx = x * src[j];
      auto ny = y * dst[j];
      auto it = map.find(nx);
      if (it != map.end()) {
        if (it->second != ny) throw InvalidTree("edge " + e.name + " does not define a homomorphism");
        continue;
      }
      auto bt = back.find(ny);
      if (bt != back.end() && bt->second != nx) throw InvalidTree("edge " + e.name + " is not injective");
      map.emplace(nx, ny);
      back.emplace(ny, nx);
      queue.push_back(nx);
    }
  }
  return map;
}

namespace {

// Generators of the vertex group are accepted without materialising it.
bool generated_inside(const std::vector<Permutation>& xs, const FinGroup& g) {
  const auto& gens = g.generators();
  for (const auto& x : xs)
    if (std::find(gens.begin(), gens.end(), x) == gens.end() && !g.contains(x)) return false;
  return true;
}

}  // namespace

void TreeOfFiniteGroups::validate() const {
  const std::size_t n = vertex_groups.size();
  if (n == 0) throw InvalidTree("no vertices");
  if (vertex_names.size() != n) throw InvalidTree("vertex names do not match vertex groups");
  if (edges.size() + 1 != n) throw InvalidTree("edge count is not vertices - 1");
  std::vector<std::size_t> uf(n);
  for (std::size_t i = 0; i < n; ++i) uf[i] = i;
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (e.from >= n || e.to >= n || e.from == e.to) throw InvalidTree("edge " + e.name + " has bad endpoints");
    if (e.from_images.size() != e.to_images.size()) throw InvalidTree("edge " + e.name + " has unequal generator lists");
    auto a = find(e.from), b = find(e.to);
    if (a == b) throw InvalidTree("edges form a cycle");
    uf[a] = b;
    if (!generated_inside(e.from_images, vertex_groups[e.from])) throw InvalidTree("edge " + e.name + " leaves its source group");
    if (!generated_inside(e.to_images, vertex_groups[e.to])) throw InvalidTree("edge " + e.name + " leaves its target group");
    edge_isomorphism(k, e.from);
  }
}

std::vector<std::size_t> TreeBall::count_by_depth() const {
  std::vector<std::size_t> out(radius + 1, 0);
  for (const auto& v : vertices) ++out[v.depth];
  return out;
}

namespace {

std::vector<std::size_t> incident(const TreeOfFiniteGroups& t, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.edges.size(); ++k)
    if (t.edges[k].from == v || t.edges[k].to == v) out.push_back(k);
  return out;
}

}  // namespace

TreeBall build_ball(const TreeOfFiniteGroups& t, std::size_t radius, std::size_t base, std::size_t vertex_cap) {
  if (base >= t.vertex_groups.size()) throw IndexOutOfRange("base vertex out of range");
  TreeBall ball;
  ball.radius = radius;
  ball.vertices.push_back({base, 0, std::nullopt, "v" + std::to_string(base + 1)});

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Permutation>> transversals;
  auto transversal = [&](std::size_t v, std::size_t f) -> const std::vector<Permutation>& {
    auto key = std::make_pair(v, f);
    auto it = transversals.find(key);
    if (it == transversals.end())
      it = transversals.emplace(key, left_transversal(t.vertex_groups[v], t.edge_group(f, v))).first;
    return it->second;
  };

  for (std::size_t h = 0; h < ball.vertices.size(); ++h) {
    if (ball.vertices[h].depth >= radius) continue;
    const auto v = ball.vertices[h].quotient_vertex;
    std::optional<std::size_t> incoming;
    if (ball.vertices[h].parent_edge) incoming = ball.edges[*ball.vertices[h].parent_edge].quotient_edge;
    for (auto f : incident(t, v)) {
      const auto w = t.other_end(f, v);
      auto at_child = t.edge_group(f, w);
      for (const auto& rep : transversal(v, f)) {
        if (incoming && *incoming == f && rep.is_identity()) continue;
        if (ball.vertices.size() >= vertex_cap)
          throw OrderBoundExceeded("ball exceeds " + std::to_string(vertex_cap) + " vertices");
        std::vector<Permutation> conj;
        const auto at_parent = t.edge_group(f, v);
        for (const auto& x : at_parent.generators()) conj.push_back(rep.conjugate(x));
        const auto& gv = t.vertex_groups[v];
        TreeBall::Edge edge{h, ball.vertices.size(), f, rep, FinGroup(conj, gv.degree(), gv.bound()), at_child};
        TreeBall::Vertex child{w, ball.vertices[h].depth + 1, ball.edges.size(),
                               ball.vertices[h].name + " e" + std::to_string(f + 1) + ":" + rep.to_cycles()};
        ball.edges.push_back(std::move(edge));
        ball.vertices.push_back(std::move(child));
      }
    }
  }
  return ball;
}

std::vector<Cylinder> cylinders(const TreeOfFiniteGroups& t, const TreeBall& ball) {
  if (ball.edges.empty()) return {};
  std::set<std::size_t> orders;
  for (std::size_t k = 0; k < t.edges.size(); ++k) orders.insert(t.edge_group(k, t.edges[k].from).order());
  if (orders.size() > 1) throw MixedEdgeOrders("cylinders need edge groups of a single order");

  const std::size_t ne = ball.edges.size();
  std::vector<std::size_t> uf(ne);
  for (std::size_t i = 0; i < ne; ++i) uf[i] = i;
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  std::vector<std::vector<std::size_t>> at_vertex(ball.vertices.size());
  for (std::size_t k = 0; k < ne; ++k) {
    at_vertex[ball.edges[k].parent].push_back(k);
    at_vertex[ball.edges[k].child].push_back(k);
  }
  // Adjacent edges are compared inside the vertex group they share.
  for (std::size_t y = 0; y < ball.vertices.size(); ++y) {
    std::map<std::vector<Permutation>, std::size_t> first;
    for (auto k : at_vertex[y]) {
      const auto& e = ball.edges[k];
      const auto& stab = e.parent == y ? e.stabilizer_at_parent : e.stabilizer_at_child;
      auto [it, fresh] = first.emplace(stab.sorted_elements(), k);
      if (!fresh) uf[find(k)] = find(it->second);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < ne; ++k) classes[find(k)].push_back(k);
  std::vector<Cylinder> out;
  for (auto& [root, members] : classes) {
    Cylinder c;
    c.edges = members;
    const auto& e0 = ball.edges[members.front()];
    c.stabilizer_order = e0.stabilizer_at_parent.order();
    c.stabilizer_generators = e0.stabilizer_at_parent.generators();
    std::set<std::size_t> in_class(members.begin(), members.end());
    std::set<std::size_t> reached{members.front()};
    std::deque<std::size_t> queue{members.front()};
    while (!queue.empty()) {
      auto k = queue.front();
      queue.pop_front();
      for (auto y : {ball.edges[k].parent, ball.edges[k].child})
        for (auto j : at_vertex[y])
          if (in_class.count(j) && reached.insert(j).second) queue.push_back(j);
    }
    c.connected = reached.size() == members.size();
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Cylinder& a, const Cylinder& b) { return a.edges.front() < b.edges.front(); });
  return out;
}

namespace {

struct WalkState {
  std::size_t vertex;
  FinGroup subgroup;
  std::vector<Permutation> transport;  // edge-group element i -> its image in the vertex group
  std::unordered_map<Permutation, std::size_t, PermutationHash> pullback;
};

}  // namespace

NormalizerImage edge_normalizer_image(const TreeOfFiniteGroups& t, std::size_t edge, std::size_t state_cap) {
  if (edge >= t.edges.size()) throw IndexOutOfRange("edge out of range");
  NormalizerImage out;
  const auto u = t.edges[edge].from;
  auto c = t.edge_group(edge, u);
  out.edge_elements = c.elements();
  out.edge_generators = c.generators();
  const std::size_t n = out.edge_elements.size();

  std::set<Permutation> generators;
  auto add = [&](std::vector<Permutation::Point> img) {
    Permutation a(std::move(img));
    if (!a.is_identity()) generators.insert(std::move(a));
  };

  std::vector<WalkState> states;
  std::map<std::pair<std::size_t, std::vector<Permutation>>, std::size_t> seen;
  std::deque<std::size_t> queue;

  auto visit = [&](std::size_t v, const FinGroup& h, const std::vector<Permutation>& phi) {
    auto form = canonical_conjugate(t.vertex_groups[v], h);
    auto ci = form.conjugator.inverse();
    WalkState s{v, form.subgroup, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      s.transport.push_back(ci.conjugate(phi[i]));
      s.pullback.emplace(s.transport.back(), i);
    }
    auto key = std::make_pair(v, s.subgroup.sorted_elements());
    auto it = seen.find(key);
    if (it != seen.end()) {
      const auto& old = states[it->second];
      std::vector<Permutation::Point> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Permutation::Point>(old.pullback.at(s.transport[i]));
      add(std::move(img));
      return;
    }
    seen.emplace(std::move(key), states.size());
    queue.push_back(states.size());
    states.push_back(std::move(s));
  };

  visit(u, c, out.edge_elements);
  std::map<std::pair<std::size_t, std::size_t>, ElementMap> isos;
  while (!queue.empty()) {
    if (states.size() > state_cap) {
      out.reason = "fixed subtree not closed within " + std::to_string(state_cap) + " states";
      out.states = states.size();
      return out;
    }
    auto k = queue.front();
    queue.pop_front();
    const auto v = states[k].vertex;
    const auto& gv = t.vertex_groups[v];
    const FinGroup h = states[k].subgroup;
    const auto phi = states[k].transport;

    const auto nv = normalizer(gv, h);
    for (const auto& x : nv.generators()) {
      std::vector<Permutation::Point> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Permutation::Point>(states[k].pullback.at(x.conjugate(phi[i])));
      add(std::move(img));
    }
    for (auto f : incident(t, v)) {
      const auto w = t.other_end(f, v);
      auto key = std::make_pair(f, v);
      if (!isos.count(key)) isos.emplace(key, t.edge_isomorphism(f, v));
      const auto& psi = isos.at(key);
      const auto& gw = t.vertex_groups[w];
      for (const auto& rep : transporter_double_cosets(gv, h, t.edge_group(f, v))) {
        auto ri = rep.inverse();
        std::vector<Permutation> moved;
        for (const auto& x : phi) moved.push_back(psi.at(ri.conjugate(x)));
        std::vector<Permutation> gens;
        for (const auto& x : h.generators()) gens.push_back(psi.at(ri.conjugate(x)));
        visit(w, FinGroup(gens, gw.degree(), gw.bound()), moved);
      }
    }
  }

  out.complete = true;
  out.states = states.size();
  for (const auto& s : states) {
    std::string gens;
    for (const auto& x : s.subgroup.generators()) gens += x.to_cycles();
    out.support.push_back(t.vertex_names[s.vertex] + " H=<" + (gens.empty() ? "()" : gens) + ">");
  }

  std::vector<Permutation> inner_gens;
  for (const auto& x : out.edge_generators) inner_gens.push_back(conjugation_action(c, x));
  FinGroup inner(inner_gens, n);
  out.inner_order = inner.order();
  out.image_generators.assign(generators.begin(), generators.end());
  out.equals_inner = true;
  for (const auto& a : out.image_generators) {
    if (inner.contains(a)) continue;
    out.equals_inner = false;
    std::vector<Permutation> images;
    for (const auto& g : out.edge_generators) images.push_back(out.edge_elements[a(*c.index_of(g))]);
    out.outer_witness = std::move(images);
    break;
  }
  auto all = out.image_generators;
  all.insert(all.end(), inner_gens.begin(), inner_gens.end());
  try {
    out.image_order = FinGroup(all, n).order();
  } catch (const OrderBoundExceeded&) {
    out.image_order = std::nullopt;
  }
  return out;
}

}  // namespace coxrig
