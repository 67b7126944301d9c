#include "coxrig/rigidity.hpp"

#include <limits>
#include <memory>

#include "coxrig/errors.hpp"
#include "coxrig/perm_model.hpp"
#include "coxrig/words.hpp"

namespace coxrig {

std::string to_string(EdgeVerdict::Kind k) {
  switch (k) {
    case EdgeVerdict::Kind::kHolds: return "Holds";
    case EdgeVerdict::Kind::kFails: return "Fails";
    case EdgeVerdict::Kind::kUnknown: return "Unknown";
  }
  return "?";
}

std::string to_string(EdgeVerdict::Reason r) {
  switch (r) {
    case EdgeVerdict::Reason::kNone: return "";
    case EdgeVerdict::Reason::kTrivialOut: return "TrivialOut";
    case EdgeVerdict::Reason::kEvenRetraction: return "EvenRetraction";
    case EdgeVerdict::Reason::kComputedEqualsInn: return "ComputedEqualsInn";
  }
  return "?";
}

std::string to_string(Overall o) {
  switch (o) {
    case Overall::kTorsionRigid: return "TorsionRigid-by-Thm-1.6";
    case Overall::kNotCovered: return "NotCovered";
    case Overall::kHypothesisFails: return "HypothesisFails";
  }
  return "?";
}

namespace {

// Lazily built once per report; nullptr with a reason when some vertex is
// infinite or has no permutation model.
struct TreeCache {
  bool tried = false;
  std::unique_ptr<TreeOfFiniteGroups> tree;
  std::string why_not;

  const TreeOfFiniteGroups* get(const SplitTree& t, std::size_t bound) {
    if (!tried) {
      tried = true;
      try {
        tree = std::make_unique<TreeOfFiniteGroups>(TreeOfFiniteGroups::from_splitting(t, bound));
      } catch (const Error& e) {
        why_not = e.what();
      }
    }
    return tree.get();
  }
};

std::vector<std::string> describe_witness(const NormalizerImage& img, GenSubset s0) {
  std::vector<std::string> out;
  if (!img.outer_witness || img.edge_generators.empty()) return out;
  const auto gens = s0.indices();
  FinGroup f(img.edge_generators, img.edge_generators.front().degree());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Word w;
    for (auto local : f.word_of(*f.index_of((*img.outer_witness)[i]))) w.push_back(gens[local]);
    out.push_back(std::to_string(gens[i] + 1) + " -> " + word_to_string(w));
  }
  return out;
}

EdgeVerdict edge_condition_impl(const CoxeterMatrix& m, const SplitTree& t, std::size_t edge,
                                const RigidityOptions& opt, TreeCache& cache) {
  EdgeVerdict v;
  v.edge = edge;
  v.generators = t.edges.at(edge).generators;
  if (auto o = spherical_order(m, v.generators); o && *o <= Order(std::numeric_limits<std::uint64_t>::max()))
    v.order = o->convert_to<std::uint64_t>();

  if (is_even(m)) {
    v.kind = EdgeVerdict::Kind::kHolds;
    v.reason = EdgeVerdict::Reason::kEvenRetraction;
    v.detail = "letter-deleting retraction onto the edge group makes every normaliser action inner";
    return v;
  }

  if (v.order && *v.order <= opt.automorphism_bound) {
    try {
      auto model = coxeter_perm_model(induced_system(m, v.generators).matrix, opt.order_bound);
      if (model && !has_outer_automorphism(*model, opt.automorphism_bound)) {
        v.kind = EdgeVerdict::Kind::kHolds;
        v.reason = EdgeVerdict::Reason::kTrivialOut;
        v.detail = "Out of the edge group is trivial";
        return v;
      }
    } catch (const Error& e) {
      v.detail = std::string("automorphism search skipped: ") + e.what() + "; ";
    }
  }

  const auto* tree = cache.get(t, opt.order_bound);
  if (!tree) {
    v.kind = EdgeVerdict::Kind::kUnknown;
    v.detail += "no tree of finite groups: " + cache.why_not;
    return v;
  }
  try {
    auto img = edge_normalizer_image(*tree, edge, opt.normalizer_state_cap);
    if (!img.complete) {
      v.kind = EdgeVerdict::Kind::kUnknown;
      v.detail += "normaliser walk incomplete: " + img.reason;
    } else if (img.equals_inner) {
      v.kind = EdgeVerdict::Kind::kHolds;
      v.reason = EdgeVerdict::Reason::kComputedEqualsInn;
      v.detail = "normaliser image equals Inn";
    } else {
      v.kind = EdgeVerdict::Kind::kFails;
      v.detail = "normaliser image has order " + (img.image_order ? std::to_string(*img.image_order) : "?") +
                 ", Inn has order " + std::to_string(img.inner_order);
      v.witness = describe_witness(img, v.generators);
    }
    v.normalizer = std::move(img);
  } catch (const Error& e) {
    v.kind = EdgeVerdict::Kind::kUnknown;
    v.detail += std::string("normaliser computation failed: ") + e.what();
  }
  return v;
}

}  // namespace

EdgeVerdict edge_condition(const CoxeterMatrix& m, const SplitTree& t, std::size_t edge, const RigidityOptions& opt) {
  TreeCache cache;
  return edge_condition_impl(m, t, edge, opt, cache);
}

RigidityReport rigidity_report(const CoxeterMatrix& m, const RigidityOptions& opt) {
  RigidityReport r;
  r.splitting = stallings_splitting(m);
  r.moussong = moussong_hyperbolic(m);
  r.classification = classify_components(m);
  r.theorem1_trichotomy = r.classification.theorem1_hypothesis;

  TreeCache cache;
  for (std::size_t e = 0; e < r.splitting.edges.size(); ++e)
    r.edges.push_back(edge_condition_impl(m, r.splitting, e, opt, cache));

  bool any_fails = false, any_unknown = false;
  for (const auto& v : r.edges) {
    any_fails |= v.kind == EdgeVerdict::Kind::kFails;
    any_unknown |= v.kind == EdgeVerdict::Kind::kUnknown;
  }
  const bool finite = m.rank() == 0 || is_spherical(m, m.all());

  if (!r.moussong.hyperbolic) {
    r.overall = Overall::kNotCovered;
    r.notes.push_back("not hyperbolic, so the edge-normaliser theorem does not apply");
  } else if (any_fails) {
    r.overall = Overall::kHypothesisFails;
    r.notes.push_back("some edge normaliser acts by outer automorphisms; the hypothesis fails, rigidity is not decided");
  } else if (any_unknown) {
    r.overall = Overall::kNotCovered;
    r.notes.push_back("some edge verdict is unknown within the configured budgets");
  } else {
    r.overall = Overall::kTorsionRigid;
  }
  if (finite) r.notes.push_back("the group is finite");

  if (r.overall == Overall::kTorsionRigid) r.cited.push_back(kTagMainTheorem);
  if (r.moussong.hyperbolic && !finite && is_even(m)) r.cited.push_back(kTagEven);
  if (r.moussong.hyperbolic && r.splitting.nodes.size() == 1 && !r.splitting.nodes[0].finite)
    r.cited.push_back(kTagOneEnded);
  if (r.theorem1_trichotomy) r.cited.push_back(kTagTrichotomy);
  return r;
}

}  // namespace coxrig
