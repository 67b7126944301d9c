#include "coxrig/splitting.hpp"

#include <algorithm>
#include <deque>

#include "coxrig/errors.hpp"

namespace coxrig {

namespace {

std::vector<GenSubset> sorted_spherical_subsets(SphericityOracle& oracle, GenSubset within) {
  std::vector<GenSubset> out;
  for_each_spherical_subset(oracle, within, [&](GenSubset t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

// First separator of T in search order, as (S0, components of T \ S0).
std::optional<std::pair<GenSubset, std::vector<GenSubset>>> first_separator(SphericityOracle& oracle,
                                                                            const DiagramGraph& fin, GenSubset t) {
  for (auto s0 : sorted_spherical_subsets(oracle, t)) {
    auto comps = fin.components(t - s0);
    if (comps.size() >= 2) return std::make_pair(s0, std::move(comps));
  }
  return std::nullopt;
}

}  // namespace

std::vector<Separator> spherical_separators(const CoxeterMatrix& m, std::size_t cap) {
  SphericityOracle oracle(m);
  if (oracle.spherical(m.all())) throw SphericalInput("the group is finite and has no splitting over finite groups");
  auto fin = DiagramGraph::fin_graph(m);
  std::vector<Separator> out;
  for (auto s0 : sorted_spherical_subsets(oracle, m.all())) {
    auto comps = fin.components(m.all() - s0);
    if (comps.size() < 2) continue;
    // Bipartitions of the components with the first one on the S1 side.
    const std::size_t rest = comps.size() - 1;
    std::vector<Separator> batch;
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << rest); ++mask) {
      GenSubset s1 = s0 | comps[0];
      for (std::size_t k = 0; k < rest; ++k)
        if ((mask >> k) & 1U) s1 = s1 | comps[k + 1];
      GenSubset s2 = (m.all() - s1) | s0;
      batch.push_back({s0, s1, s2});
      if (out.size() + batch.size() >= cap) break;
    }
    std::sort(batch.begin(), batch.end(), [](const Separator& a, const Separator& b) { return size_lex_less(a.s1, b.s1); });
    out.insert(out.end(), batch.begin(), batch.end());
    if (out.size() >= cap) break;
  }
  return out;
}

std::vector<std::size_t> SplitTree::incident_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].from == node || edges[e].to == node) out.push_back(e);
  return out;
}

std::optional<std::string> SplitTree::invariant_violation() const {
  if (nodes.empty()) return "no nodes";
  if (edges.size() + 1 != nodes.size()) return "edge count is not nodes - 1";
  std::vector<std::size_t> uf(nodes.size());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = i;
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  SphericityOracle oracle(matrix);
  GenSubset cover;
  for (const auto& n : nodes) cover = cover | n.generators;
  if (cover != matrix.all()) return "node labels do not cover S";
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.from >= nodes.size() || ed.to >= nodes.size() || ed.from == ed.to) return "edge " + std::to_string(e) + " has bad endpoints";
    auto a = find(ed.from), b = find(ed.to);
    if (a == b) return "edges form a cycle";
    uf[a] = b;
    const auto& la = nodes[ed.from].generators;
    const auto& lb = nodes[ed.to].generators;
    if (!oracle.spherical(ed.generators)) return "edge label " + ed.generators.to_string() + " is not spherical";
    if ((la & lb) != ed.generators) return "edge label " + ed.generators.to_string() + " is not the endpoint intersection";
    if (ed.generators == la || ed.generators == lb) return "edge label " + ed.generators.to_string() + " equals an endpoint label";
  }
  return std::nullopt;
}

void SplitTree::validate() const {
  if (auto v = invariant_violation()) throw InvalidTree(*v);
}

SplitTree stallings_splitting(const CoxeterMatrix& m) {
  SphericityOracle oracle(m);
  auto fin = DiagramGraph::fin_graph(m);
  SplitTree tree{m, {{m.all(), false, std::nullopt}}, {}};

  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    auto k = work.front();
    work.pop_front();
    auto t = tree.nodes[k].generators;
    if (oracle.spherical(t)) {
      tree.nodes[k].finite = true;
      continue;
    }
    auto sep = first_separator(oracle, fin, t);
    if (!sep) {
      tree.nodes[k].one_ended = "asserted-by-search";
      continue;
    }
    auto [s0, comps] = *sep;
    GenSubset s1 = s0 | comps[0];
    GenSubset s2 = t - comps[0];
    std::size_t n = tree.nodes.size();
    tree.nodes[k].generators = s1;
    tree.nodes.push_back({s2, false, std::nullopt});
    // Edge labels are cliques of the finite-label graph, so each lies on one side.
    for (auto& e : tree.edges) {
      if (e.from != k && e.to != k) continue;
      if (e.generators.is_subset_of(s1)) continue;
      (e.from == k ? e.from : e.to) = n;
    }
    tree.edges.push_back({k, n, s0});
    work.push_back(k);
    work.push_back(n);
  }

  // Contract edges whose label equals an endpoint label.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
      auto [a, b, lab] = tree.edges[e];
      std::size_t keep, drop;
      if (lab == tree.nodes[a].generators) {
        keep = b;
        drop = a;
      } else if (lab == tree.nodes[b].generators) {
        keep = a;
        drop = b;
      } else {
        continue;
      }
      tree.edges.erase(tree.edges.begin() + static_cast<std::ptrdiff_t>(e));
      for (auto& x : tree.edges) {
        if (x.from == drop) x.from = keep;
        if (x.to == drop) x.to = keep;
      }
      tree.nodes.erase(tree.nodes.begin() + static_cast<std::ptrdiff_t>(drop));
      for (auto& x : tree.edges) {
        if (x.from > drop) --x.from;
        if (x.to > drop) --x.to;
      }
      changed = true;
      break;
    }
  }
  return tree;
}

bool even_vertex_check(const CoxeterMatrix& m, const SplitTree& t) {
  bool all_even = std::all_of(t.nodes.begin(), t.nodes.end(), [&](const SplitNode& n) { return is_even(m, n.generators); });
  return is_even(m) == all_even;
}

std::string to_string(VCType::Kind k) {
  switch (k) {
    case VCType::Kind::kCyclic: return "CyclicType";
    case VCType::Kind::kDihedral: return "DihedralType";
    case VCType::Kind::kNotVirtuallyCyclic: return "NotVirtuallyCyclic";
  }
  return "?";
}

VCType vc_type(const CoxeterMatrix& m) {
  VCType out;
  if (m.rank() == 0 || is_spherical(m, m.all())) return out;
  auto tree = stallings_splitting(m);
  if (tree.nodes.size() != 2 || !tree.nodes[0].finite || !tree.nodes[1].finite) return out;
  const auto& e = tree.edges[0];
  auto oa = *spherical_order(m, tree.nodes[e.from].generators);
  auto ob = *spherical_order(m, tree.nodes[e.to].generators);
  auto oc = *spherical_order(m, e.generators);
  if (oa == 2 * oc && ob == 2 * oc) {
    out.kind = VCType::Kind::kDihedral;
    out.a = tree.nodes[e.from].generators;
    out.c = e.generators;
    out.b = tree.nodes[e.to].generators;
  }
  return out;
}

}  // namespace coxrig
