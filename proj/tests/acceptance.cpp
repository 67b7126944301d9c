// Acceptance gate: each criterion runs once under its wall-clock limit and
// prints one PASS/FAIL line. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "coxrig/bass_serre.hpp"
#include "coxrig/casework.hpp"
#include "coxrig/classification.hpp"
#include "coxrig/coxeter.hpp"
#include "coxrig/fingroup.hpp"
#include "coxrig/perm_model.hpp"
#include "coxrig/rigidity.hpp"
#include "coxrig/splitting.hpp"
#include "coxrig/words.hpp"
#include "oracles.hpp"

using namespace coxrig;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

const CoxeterMatrix& pgl2() {
  static const CoxeterMatrix m = parse_system("rank 3; m 1 3 = 3; m 2 3 = inf");
  return m;
}

// 1
void triangle_trichotomy() {
  std::vector<Label> labels{2, 3, 4, 5, 6, 7, 8, kInfinity};
  std::size_t checked = 0;
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a; b < labels.size(); ++b)
      for (std::size_t c = b; c < labels.size(); ++c) {
        Label p = labels[a], q = labels[b], r = labels[c];
        int sign = oracle::triangle_sign(p, q, r);
        auto cls = classify_components(oracle::triangle(p, q, r));
        std::size_t sph = 0, aff = 0, hyp = 0;
        for (const auto& comp : cls.components) {
          sph += comp.cls.kind == ComponentKind::kSpherical;
          aff += comp.cls.kind == ComponentKind::kAffine;
          hyp += comp.cls.kind == ComponentKind::kNonElementaryHyperbolic;
        }
        std::ostringstream name;
        name << "(" << label_to_string(p) << "," << label_to_string(q) << "," << label_to_string(r) << ")";
        bool ok = sign > 0   ? sph == cls.components.size()
                  : sign == 0 ? aff == 1 && aff + sph == cls.components.size()
                              : hyp == 1 && hyp + sph == cls.components.size();
        require(ok, name.str() + " misclassified");
        ++checked;
      }
  require(checked == 120, "expected 120 triangles, saw " + std::to_string(checked));
}

// 2
void order_table() {
  auto count = [](const CoxeterMatrix& m) {
    auto e = enumerate_elements(m, 100'000);
    return e ? e->size() : std::size_t{0};
  };
  require(count(finite_template(FiniteType::A(2))) == 6, "|A2| != 6");
  require(count(finite_template(FiniteType::A(3))) == 24, "|A3| != 24");
  require(count(finite_template(FiniteType::B(3))) == 48, "|B3| != 48");
  require(count(finite_template(FiniteType::H(3))) == 120, "|H3| != 120");
  for (Label m = 2; m <= 10; ++m)
    require(count(oracle::path({m})) == 2 * m, "|I2(" + std::to_string(m) + ")| != " + std::to_string(2 * m));
}

// 3
void pgl2_pipeline() {
  auto t = stallings_splitting(pgl2());
  require(t.nodes.size() == 2 && t.edges.size() == 1, "expected two vertices and one edge");
  std::set<std::uint64_t> vertex_orders;
  for (const auto& n : t.nodes) {
    auto o = spherical_order(pgl2(), n.generators);
    require(n.finite && o.has_value(), "vertex group not finite");
    vertex_orders.insert(static_cast<std::uint64_t>(*o));
  }
  require(vertex_orders == std::set<std::uint64_t>{4, 6}, "vertex groups are not D2 and D3");
  require(t.nodes[0].generators == oracle::subset({1, 2}) && t.nodes[1].generators == oracle::subset({1, 3}),
          "vertex generators are not {1,2} and {1,3}");
  require(t.edges[0].generators == oracle::subset({1}), "edge group is not <s1> = Z/2");
  auto r = rigidity_report(pgl2());
  require(r.overall == Overall::kTorsionRigid, "overall is " + to_string(r.overall));
  require(r.edges.size() == 1 && r.edges[0].kind == EdgeVerdict::Kind::kHolds &&
              r.edges[0].reason == EdgeVerdict::Reason::kTrivialOut,
          "edge verdict is not Holds(TrivialOut)");
}

// 4
void counterexample_checklist() {
  auto c = verify_counterexample();
  std::set<std::string> ids;
  for (const auto& item : c.items) {
    ids.insert(item.id);
    require(item.informational || item.passed, item.id + ": " + item.detail);
  }
  for (const char* id : {"1a-coxeter-relations", "1b-isomorphism-types", "1c-embeddings", "2-kappa-table",
                         "3-lemma-A-witness", "4a-lemma-A-image", "4b-lemma-B-image", "5-non-isomorphism",
                         "6a-kappa-alpha", "6b-kappa-factorisation", "6c-twisted-relation", "6d-realizers"})
    require(ids.count(id) == 1, std::string("missing item ") + id);
  require(c.all_passed(), "checklist not all-true");
}

// 5
void counterexample_rigidity() {
  for (bool twisted : {false, true}) {
    auto r = rigidity_report(counterexample_system(twisted));
    require(r.overall != Overall::kTorsionRigid, "reported TorsionRigid");
    require(r.overall == Overall::kHypothesisFails, "overall is " + to_string(r.overall));
    bool witnessed = false;
    for (const auto& e : r.edges)
      if (e.kind == EdgeVerdict::Kind::kFails && !e.witness.empty() && e.normalizer && e.normalizer->outer_witness)
        witnessed = true;
    require(witnessed, "no failing edge carries an outer-action witness");
  }
}

// 6
void even_systems() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> rank_of(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = oracle::random_even_system(rng, rank_of(rng));
    auto r = rigidity_report(m);
    const auto text = m.to_text();
    for (const auto& n : r.splitting.nodes) require(is_even(m, n.generators), text + ": vertex group not even");
    require(even_vertex_check(m, r.splitting), text + ": even_vertex_check false");
    require(r.edges.size() == r.splitting.edges.size(), text + ": missing edge verdicts");
    for (const auto& e : r.edges)
      require(e.kind == EdgeVerdict::Kind::kHolds && e.reason == EdgeVerdict::Reason::kEvenRetraction,
              text + ": edge " + std::to_string(e.edge) + " is " + to_string(e.kind));
  }
}

// 7
void word_oracle() {
  std::size_t systems = 0, words = 0;
  for (const auto& sys : oracle::spherical_systems(48)) {
    const auto& m = sys.matrix;
    auto model = coxeter_perm_model(m);
    require(model.has_value(), m.to_text() + ": no permutation model");
    const auto& gens = model->generators();
    const auto deg = model->degree();
    auto dist = oracle::geodesic_lengths(gens, deg);
    require(dist.size() == sys.order, m.to_text() + ": model has wrong order");
    for (std::size_t len = 0; len <= 6; ++len)
      oracle::for_each_word(m.rank(), len, [&](const Word& w) {
        auto red = reduce_word(m, w);
        require(red.has_value(), m.to_text() + ": budget exhausted on " + word_to_string(w));
        auto want = dist.at(oracle::evaluate(gens, deg, w));
        require(red->size() == want, m.to_text() + ": length of " + word_to_string(w) + " is " +
                                         std::to_string(red->size()) + ", geodesic " + std::to_string(want));
        require(oracle::evaluate(gens, deg, *red) == oracle::evaluate(gens, deg, w),
                m.to_text() + ": reduction changes the element");
        ++words;
      });
    ++systems;
  }
  require(systems > 0 && words > 0, "nothing checked");
}

// 8
void domain_and_diamond() {
  auto p = [](const char* c, std::size_t d) { return Permutation::parse_cycles(c, d); };
  FinGroup s3({p("(1 2)", 3), p("(1 2 3)", 3)}, 3);
  auto rep = domain_report(s3);
  require(!rep.is_domain && rep.zero_divisor_witness, "S3 reported as a domain");
  require(rep.zero_divisor_witness->first.order() == 3 && rep.zero_divisor_witness->second.order() == 3,
          "S3 witness is not a pair of 3-cycles");
  auto a3 = normal_closure(s3, p("(1 2 3)", 3));
  require(a3.order() == 3, "closure of a 3-cycle is not A3");
  for (const auto& x : a3.elements())
    for (const auto& y : a3.elements()) require(x * y == y * x, "A3 not abelian");

  FinGroup z2({p("(1 2)", 2)}, 2);
  auto rz = domain_report(z2);
  require(!rz.is_domain, "Z/2 reported as a domain");

  std::mt19937_64 rng(7);
  for (std::size_t degree : {4, 5}) {
    FinGroup sym({p("(1 2)", degree), Permutation::parse_cycles(degree == 4 ? "(1 2 3 4)" : "(1 2 3 4 5)", degree)},
                 degree);
    for (int i = 0; i < 500; ++i) {
      auto x = oracle::random_permutation(rng, degree), y = oracle::random_permutation(rng, degree);
      require(diamond(sym, x, y).same_subgroup(diamond(sym, y, x)), "diamond not symmetric");
    }
  }
}

// 9
void dihedral_example() {
  auto c = verify_dihedral_example();
  require(c.all_passed(), "dihedral checklist has failures");
  Mat2ModP m1{11, 1, 0, 0, 2};
  require(m1.pow(3) == Mat2ModP{11, 1, 0, 0, 8}, "M1^3 != diag(1,8) mod 11");
}

// 10
void ball_counts() {
  auto split = stallings_splitting(pgl2());
  auto tree = TreeOfFiniteGroups::from_splitting(split);
  auto ball = build_ball(tree, 6);
  auto counts = ball.count_by_depth();
  // Alternating-degree recursion: n0 = 1, n1 = d(base), then each vertex at
  // depth k >= 1 has d(type) - 1 children, types alternating along paths.
  std::vector<std::size_t> degree;
  for (std::size_t v = 0; v < 2; ++v)
    degree.push_back(tree.vertex_groups[v].order() / tree.edge_group(0, v).order());
  std::vector<std::size_t> want{1, degree[0]};
  for (std::size_t k = 2; k <= 6; ++k) want.push_back(want.back() * (degree[(k - 1) % 2] - 1));
  require(want == std::vector<std::size_t>({1, 2, 4, 4, 8, 8, 16}), "recursion oracle disagrees with 1,2,4,4,8,8,16");
  require(counts == want, "ball counts differ from the recursion");
  auto cyl = cylinders(tree, ball);
  require(!cyl.empty(), "no cylinders");
  for (const auto& c : cyl) require(c.connected, "a cylinder is disconnected");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "triangle-trichotomy", 1, triangle_trichotomy},
      {2, "order-table", 10, order_table},
      {3, "pgl2-pipeline", 1, pgl2_pipeline},
      {4, "counterexample-checklist", 30, counterexample_checklist},
      {5, "counterexample-rigidity", 30, counterexample_rigidity},
      {6, "even-systems", 30, even_systems},
      {7, "word-oracle", 60, word_oracle},
      {8, "domain-and-diamond", 10, domain_and_diamond},
      {9, "dihedral-example", 1, dihedral_example},
      {10, "ball-combinatorics", 5, ball_counts},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run();
    } catch (const Failure& f) {
      why = f.what;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && secs >= c.limit_seconds) why = "over time limit";
    char line[256];
    std::snprintf(line, sizeof line, "%s %2d %-26s %8.3fs (limit %gs)", why.empty() ? "PASS" : "FAIL", c.id, c.name,
                  secs, c.limit_seconds);
    std::cout << line;
    if (!why.empty()) std::cout << "  " << why;
    std::cout << "\n";
    failures += !why.empty();
  }
  return failures;
}
