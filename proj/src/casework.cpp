#include "coxrig/casework.hpp"

#include <algorithm>
#include <sstream>

namespace coxrig {

bool Checklist::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const ChecklistItem& i) { return i.informational || i.passed; });
}

namespace {

constexpr std::size_t kMarked = 5;

// Adjacent transpositions (p, p+1) for consecutive points of each block.
std::vector<Permutation> path_generators(std::size_t degree, const std::vector<std::pair<std::size_t, std::size_t>>& blocks) {
  std::vector<Permutation> out;
  for (auto [first, points] : blocks)
    for (std::size_t p = first; p + 1 < first + points; ++p) out.push_back(Permutation::transposition(degree, p, p + 1));
  return out;
}

CoxeterMatrix path_matrix(const std::vector<std::size_t>& block_sizes) {
  std::size_t rank = 0;
  for (auto n : block_sizes) rank += n;
  CoxeterMatrix m(rank);
  std::size_t at = 0;
  for (auto n : block_sizes) {
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(at + i, at + i + 1, 3);
    at += n;
  }
  return m;
}

Permutation perm5(std::string_view cycles) { return Permutation::parse_cycles(cycles, kMarked); }

std::string cycles(const Permutation& p) { return p.to_cycles(); }

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

CounterexampleData make_data() {
  CounterexampleData d;
  // Point blocks: S3 on 0..2, S7 on 3..9, S4 on 10..13 for A; S7 on 0..6,
  // S4 on 7..10 for B.
  d.a = FinGroup(path_generators(14, {{0, 3}, {3, 7}, {10, 4}}), 14);
  d.b = FinGroup(path_generators(11, {{0, 7}, {7, 4}}), 11);
  std::vector<Permutation> cg;
  for (std::size_t n = 0; n < kMarked; ++n) cg.push_back(Permutation::transposition(2 * kMarked, 2 * n, 2 * n + 1));
  d.c = FinGroup(cg, 2 * kMarked);
  d.a_matrix = path_matrix({2, 6, 3});
  d.b_matrix = path_matrix({6, 3});
  d.a_marked = {0, 2, 4, 6, 8};
  d.b_marked = {0, 2, 6, 4, 8};
  d.x = 3;
  d.i = {0, 1, 2, 3, 4};
  d.j = {0, 1, 2, 3, 4};
  d.k = {2, 0, 4, 3, 1};
  d.alpha = perm5("(2 3 4)");
  d.beta = perm5("(3 5)(1 2 4)");
  d.kappa = perm5("(2 1 3 5)");
  d.alpha_prime = perm5("(2 3)");
  d.beta_prime = perm5("(2 1)(3 5)");
  return d;
}

std::vector<Permutation> marked_of(const FinGroup& g, const std::vector<std::size_t>& idx) {
  std::vector<Permutation> out;
  for (auto i : idx) out.push_back(g.generators()[i]);
  return out;
}

// Every generator is an involution and s*t has order exactly m(s,t).
std::optional<std::string> relation_failure(const FinGroup& g, const CoxeterMatrix& m) {
  const auto& s = g.generators();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].order() != 2) return "generator " + std::to_string(i + 1) + " is not an involution";
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if ((s[i] * s[j]).order() != m(i, j))
        return "order of s" + std::to_string(i + 1) + " s" + std::to_string(j + 1) + " is " +
               std::to_string((s[i] * s[j]).order()) + ", expected " + label_to_string(m(i, j));
  }
  return std::nullopt;
}

std::vector<std::size_t> factor_orders(const FinGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& f : decompose_blocks(g).factors) out.push_back(f.order());
  return out;
}

std::string list(const std::vector<std::size_t>& v) {
  std::vector<std::string> s;
  for (auto x : v) s.push_back(std::to_string(x));
  return "[" + join(s) + "]";
}

bool embedding_ok(const FinGroup& target, const std::vector<std::size_t>& marked, const std::vector<std::size_t>& map) {
  std::vector<Permutation> img;
  for (auto n : map) img.push_back(target.generators()[marked[n]]);
  for (std::size_t p = 0; p < img.size(); ++p) {
    if (img[p].order() != 2) return false;
    for (std::size_t q = p + 1; q < img.size(); ++q)
      if (img[p] * img[q] != img[q] * img[p]) return false;
  }
  return FinGroup(img, target.degree()).order() == (std::size_t{1} << img.size());
}

std::optional<Permutation> find_realizer(const std::vector<Permutation>& elements, const std::vector<Permutation>& marked,
                                         const Permutation& action) {
  for (const auto& n : elements)
    if (perm_action_on_marked_set({n}, marked).front() == action) return n;
  return std::nullopt;
}

// All permutations of the five marked indices generated by `gens`.
std::vector<Permutation> expected_image(std::initializer_list<const char*> gens) {
  std::vector<Permutation> g;
  for (auto c : gens) g.push_back(perm5(c));
  return FinGroup(g, kMarked).sorted_elements();
}

}  // namespace

const CounterexampleData& counterexample_data() {
  static const CounterexampleData d = make_data();
  return d;
}

CoxeterMatrix counterexample_system(bool twisted) {
  const auto& d = counterexample_data();
  const std::size_t na = d.a_matrix.rank(), nb = d.b_matrix.rank();
  const auto& glue = twisted ? d.k : d.j;
  // Global index of each generator of B.
  std::vector<std::size_t> global(nb, 0);
  std::vector<bool> b_shared(nb, false);
  std::size_t next = na;
  for (std::size_t q = 0; q < nb; ++q) {
    auto it = std::find(d.b_marked.begin(), d.b_marked.end(), q);
    if (it == d.b_marked.end()) {
      global[q] = next++;
      continue;
    }
    auto n = static_cast<std::size_t>(it - d.b_marked.begin());  // q is b_n
    auto c = static_cast<std::size_t>(std::find(glue.begin(), glue.end(), n) - glue.begin());
    global[q] = d.a_marked[d.i[c]];
    b_shared[q] = true;
  }
  CoxeterMatrix m(next);
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = p + 1; q < na; ++q) m.set(p, q, d.a_matrix(p, q));
  for (std::size_t p = 0; p < nb; ++p)
    for (std::size_t q = p + 1; q < nb; ++q)
      if (!(b_shared[p] && b_shared[q])) m.set(global[p], global[q], d.b_matrix(p, q));
  std::vector<bool> a_shared(na, false);
  for (auto i : d.a_marked) a_shared[i] = true;
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = 0; q < nb; ++q)
      if (!a_shared[p] && !b_shared[q]) m.set(p, global[q], kInfinity);
  return m;
}

Checklist verify_counterexample() {
  const auto& d = counterexample_data();
  Checklist out{"counterexample", {}};
  auto add = [&](std::string id, std::string anchor, bool ok, std::string detail, bool info = false) {
    out.items.push_back({std::move(id), std::move(anchor), ok, info, std::move(detail)});
  };

  const auto am = marked_of(d.a, d.a_marked);
  const auto bm = marked_of(d.b, d.b_marked);

  // (1) models
  {
    std::vector<std::string> bad;
    if (auto f = relation_failure(d.a, d.a_matrix)) bad.push_back("A: " + *f);
    if (auto f = relation_failure(d.b, d.b_matrix)) bad.push_back("B: " + *f);
    if (auto f = relation_failure(d.c, CoxeterMatrix(kMarked))) bad.push_back("C: " + *f);
    add("1a-coxeter-relations", "A, B, C are the Coxeter groups of their diagrams", bad.empty(),
        bad.empty() ? "every (s t)^m(s,t) = 1 with exact orders" : join(bad, "; "));
    auto fa = factor_orders(d.a), fb = factor_orders(d.b);
    auto oc = d.c.order();
    bool ok = fa == std::vector<std::size_t>{6, 5040, 24} && fb == std::vector<std::size_t>{5040, 24} && oc == 32;
    add("1b-isomorphism-types", "A is isomorphic to S3 x S7 x S4, B to S7 x S4, C to (Z/2)^5", ok,
        "block orders A " + list(fa) + ", B " + list(fb) + ", |C| = " + std::to_string(oc));
    bool emb = embedding_ok(d.a, d.a_marked, d.i) && embedding_ok(d.b, d.b_marked, d.j) &&
               embedding_ok(d.b, d.b_marked, d.k);
    add("1c-embeddings", "i(c_n) = a_n, j(c_n) = b_n and k are embeddings of C", emb,
        "images are commuting involutions generating a group of order 32");
  }

  // (2) kappa as the table of k
  {
    bool ok = true;
    for (std::size_t n = 0; n < kMarked; ++n) ok &= d.kappa(n) == d.k[n];
    ok &= d.kappa == perm5("(1 3 5 2)");
    add("2-kappa-table", "k(c_i) = b_kappa(i), namely kappa = (2 1 3 5)", ok, "kappa = " + cycles(d.kappa));
  }

  // (3) explicit witness for the lemma on A
  {
    const auto& g = d.a.generators();
    const auto &x = g[d.x], &a2 = am[1], &a3 = am[2], &a4 = am[3];
    auto a = x * a2 * a3 * x;
    auto in_block = restrict_to(a, {3, 4, 5, 6, 7, 8, 9});
    bool ok = a.order() == 2 && a.conjugate(a2) == a3 && a.conjugate(a3) == a2 &&
              in_block == a && a == Permutation::parse_cycles("(4 6)(5 7)", 14);
    auto y = g[5];
    auto a_34 = y * a3 * a4 * y;
    bool ok34 = a_34.order() == 2 && a_34.conjugate(a3) == a4 && a_34.conjugate(a4) == a3;
    add("3-lemma-A-witness", "the involution a = x a2 a3 x satisfies a a2 a^-1 = a3", ok && ok34,
        "a = " + cycles(a) + " on A's points, (1 3)(2 4) in the S7 block; an involution swapping a3 and a4 is " +
            cycles(a_34));
  }

  // (4) full images of the normalisers on the marked generators
  const FinGroup ca(am, d.a.degree());
  const FinGroup cb(bm, d.b.degree());
  const auto na = normalizer(d.a, ca);
  const auto nb = normalizer(d.b, cb);
  const auto image_a = perm_action_on_marked_set(na.elements(), am);
  const auto image_b = perm_action_on_marked_set(nb.elements(), bm);
  {
    bool ok = image_a.size() == 6 && image_a == expected_image({"(2 3)", "(3 4)"});
    add("4a-lemma-A-image", "N_A(C_A) -> S({a1,..,a5}) has image S({a2,a3,a4})", ok,
        "|N_A(C_A)| = " + std::to_string(na.order()) + ", image order " + std::to_string(image_a.size()));
    ok = image_b.size() == 12 && image_b == expected_image({"(1 2)", "(2 4)", "(3 5)"});
    add("4b-lemma-B-image", "N_B(C_B) -> S({b1,..,b5}) has image S({b1,b2,b4}) x S({b3,b5})", ok,
        "|N_B(C_B)| = " + std::to_string(nb.order()) + ", image order " + std::to_string(image_b.size()));
  }

  // (5) the obstruction, over every pair
  {
    std::size_t pairs = 0, hits = 0;
    bool sigma_fixes_5 = true, tau_5_in_35 = true;
    for (const auto& s : image_a) {
      sigma_fixes_5 &= s(4) == 4;
      for (const auto& t : image_b) {
        ++pairs;
        if (t * s.inverse() == d.kappa) ++hits;
      }
    }
    for (const auto& t : image_b) tau_5_in_35 &= t(4) == 4 || t(4) == 2;
    bool ok = pairs == 72 && hits == 0 && sigma_fixes_5 && tau_5_in_35 && d.kappa(4) == 1;
    add("5-non-isomorphism", "alpha fixes 5 and beta(5) is in {3,5}, thus kappa(5) cannot be 2", ok,
        std::to_string(pairs) + " pairs, " + std::to_string(hits) + " with beta alpha^-1 = kappa");
  }

  // (6) identities behind the isomorphic extensions
  {
    const auto& k = d.kappa;
    add("6a-kappa-alpha", "kappa alpha kappa^-1 = beta kappa", k * d.alpha * k.inverse() == d.beta * k,
        "both sides are " + cycles(d.beta * k));
    add("6b-kappa-factorisation", "kappa = (2 3)(2 1)(3 5)", k == perm5("(2 3)(2 1)(3 5)"),
        "product is " + cycles(perm5("(2 3)(2 1)(3 5)")));
    add("6c-twisted-relation", "b_beta'(i) = b_alpha'kappa(i)", d.beta_prime == d.alpha_prime * k,
        "alpha' kappa = " + cycles(d.alpha_prime * k));
    auto ra = find_realizer(na.elements(), am, d.alpha);
    auto rb = find_realizer(nb.elements(), bm, d.beta);
    auto ra2 = find_realizer(na.elements(), am, d.alpha_prime);
    auto rb2 = find_realizer(nb.elements(), bm, d.beta_prime);
    auto show = [](const std::optional<Permutation>& p) { return p ? cycles(*p) : std::string("none"); };
    add("6d-realizers", "there exist a, b, a', b' acting on the a_i, b_i as alpha, beta, alpha', beta'",
        ra && rb && ra2 && rb2,
        "a = " + show(ra) + ", b = " + show(rb) + ", a' = " + show(ra2) + ", b' = " + show(rb2));
  }

  // Reported only: normality of C_A in A and C_B in B.
  {
    auto normal_in = [](const FinGroup& g, const FinGroup& h) {
      for (const auto& s : g.generators())
        for (const auto& y : h.generators())
          if (!h.contains(s.conjugate(y))) return false;
      return true;
    };
    bool a_normal = normal_in(d.a, ca), b_normal = normal_in(d.b, cb);
    add("info-normality", "C is normal in G and G'", a_normal && b_normal,
        std::string("C_A normal in A: ") + (a_normal ? "yes" : "no") + ", C_B normal in B: " + (b_normal ? "yes" : "no"),
        true);
  }
  return out;
}

Checklist verify_dihedral_example() {
  constexpr std::uint64_t p = 11;
  const std::map<std::string, Mat2ModP> named{
      {"M0", {p, 0, 1, 1, 0}},
      {"M1", {p, 1, 0, 0, 2}},
      {"M2", {p, 1, 0, 0, 8}},
  };
  const std::vector<MatrixClaim> claims{
      {"cube", "M1^3", "M2", true},
      {"swap-squared", "M0^2", "I", true},
      {"conjugate-not-M1", "M0 M1 M0", "M1", false},
      {"conjugate-not-M1-inverse", "M0 M1 M0", "M1^-1", false},
  };
  const std::vector<std::string> anchors{
      "M2 = M1^3 = (1 0; 0 8)",
      "M0 is the swap matrix, M0^2 = I",
      "M0 M1 M0 differs from M1",
      "M0 M1 M0 differs from M1^-1",
  };
  auto results = matrix_mod_p_check(p, named, claims);
  Checklist out{"dihedral", {}};
  for (std::size_t i = 0; i < claims.size(); ++i) {
    auto lhs = evaluate_matrix_product(p, named, claims[i].lhs);
    auto rhs = evaluate_matrix_product(p, named, claims[i].rhs);
    out.items.push_back({claims[i].label, anchors[i], results[i], false,
                         claims[i].lhs + " = " + lhs.to_string() + ", " + claims[i].rhs + " = " + rhs.to_string()});
  }
  auto ord2 = multiplicative_order(2, p);
  out.items.push_back({"order-of-2", "2 has multiplicative order 10 mod 11", ord2 == 10, false, std::to_string(ord2)});
  auto ord_m1 = named.at("M1").order();
  out.items.push_back({"order-of-M1", "M1 has order 10 in GL2(Z/11)", ord_m1 == 10, false, std::to_string(ord_m1)});
  return out;
}

}  // namespace coxrig
