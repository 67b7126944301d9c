#include "coxrig/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "coxrig/errors.hpp"

namespace coxrig {

std::string label_to_string(Label m) {
  return is_infinite(m) ? std::string("inf") : std::to_string(m);
}

GenSubset GenSubset::full(std::size_t rank) {
  if (rank > kMaxRank) throw InvalidMatrix("rank exceeds " + std::to_string(kMaxRank));
  return GenSubset(rank == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank) - 1);
}

GenSubset GenSubset::of(std::initializer_list<std::size_t> indices) {
  GenSubset s;
  for (auto i : indices) s = s.with(i);
  return s;
}

GenSubset GenSubset::from_indices(const std::vector<std::size_t>& indices) {
  GenSubset s;
  for (auto i : indices) {
    if (i >= kMaxRank) throw IndexOutOfRange("generator index " + std::to_string(i + 1) + " out of range");
    s = s.with(i);
  }
  return s;
}

std::vector<std::size_t> GenSubset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::string GenSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto i : indices()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

bool lex_less(GenSubset a, GenSubset b) {
  const auto x = a.indices();
  const auto y = b.indices();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

bool size_lex_less(GenSubset a, GenSubset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

CoxeterMatrix::CoxeterMatrix(std::size_t rank) : rank_(rank), entries_(rank * rank, 2) {
  if (rank > kMaxRank) throw InvalidMatrix("rank exceeds " + std::to_string(kMaxRank));
  for (std::size_t i = 0; i < rank; ++i) entries_[i * rank + i] = 1;
}

CoxeterMatrix CoxeterMatrix::from_rows(const std::vector<std::vector<Label>>& rows) {
  CoxeterMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InvalidMatrix("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const Label v = rows[i][j];
      if (v == 0) throw InvalidMatrix("label 0 is not allowed (use inf)");
      if (i == j) {
        if (v != 1) throw InvalidMatrix("diagonal entry m(" + std::to_string(i + 1) + "," + std::to_string(i + 1) + ") must be 1");
        continue;
      }
      if (v == 1) throw InvalidMatrix("off-diagonal entry m(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = 1");
      if (rows[j][i] != v) throw InvalidMatrix("matrix is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      m.entries_[i * m.rank_ + j] = v;
    }
  }
  return m;
}

void CoxeterMatrix::set(std::size_t i, std::size_t j, Label m) {
  if (i >= rank_ || j >= rank_) throw IndexOutOfRange("generator index out of range");
  if (i == j) {
    if (m != 1) throw InvalidMatrix("diagonal entries must be 1");
    return;
  }
  if (m == 0) throw InvalidMatrix("label 0 is not allowed (use inf)");
  if (m == 1) throw InvalidMatrix("off-diagonal entries must be at least 2");
  entries_[i * rank_ + j] = m;
  entries_[j * rank_ + i] = m;
}

std::string CoxeterMatrix::to_text() const {
  std::ostringstream out;
  out << "rank " << rank_;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i + 1; j < rank_; ++j)
      if ((*this)(i, j) != 2) out << "; m " << i + 1 << ' ' << j + 1 << " = " << label_to_string((*this)(i, j));
  return out.str();
}

GenSubset InducedSystem::to_parent(GenSubset local) const {
  GenSubset out;
  for (auto i : local.indices()) out = out.with(parent_index.at(i));
  return out;
}

GenSubset InducedSystem::to_local(GenSubset parent) const {
  GenSubset out;
  for (std::size_t i = 0; i < parent_index.size(); ++i)
    if (parent.contains(parent_index[i])) out = out.with(i);
  return out;
}

DiagramGraph DiagramGraph::fin_graph(const CoxeterMatrix& m) {
  std::vector<GenSubset> adj(m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j)
      if (i != j && !is_infinite(m(i, j))) adj[i] = adj[i].with(j);
  return DiagramGraph(Convention::kFin, std::move(adj));
}

DiagramGraph DiagramGraph::cox_diagram(const CoxeterMatrix& m) {
  std::vector<GenSubset> adj(m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j)
      if (i != j && m(i, j) != 2) adj[i] = adj[i].with(j);
  return DiagramGraph(Convention::kCox, std::move(adj));
}

std::vector<GenSubset> DiagramGraph::components(GenSubset within) const {
  std::vector<GenSubset> out;
  GenSubset remaining = within;
  while (!remaining.empty()) {
    GenSubset comp = GenSubset::of({remaining.min_index()});
    GenSubset frontier = comp;
    while (!frontier.empty()) {
      GenSubset next;
      for (auto v : frontier.indices()) next = next | (adjacency_[v] & within);
      frontier = next - comp;
      comp = comp | frontier;
    }
    out.push_back(comp);
    remaining = remaining - comp;
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comments(std::string_view text) {
  std::string out;
  bool in_comment = false;
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    if (!in_comment) out += c;
  }
  return out;
}

std::optional<Label> parse_label(std::string_view tok) {
  std::string t = trim(tok);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "oo") return kInfinity;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
  if (v >= kInfinity) return std::nullopt;
  return static_cast<Label>(v);
}

std::size_t parse_index(const std::string& tok, std::size_t rank) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("expected a generator index, got '" + tok + "'");
  if (v < 1 || v > rank) throw InvalidMatrix("generator index " + tok + " outside 1.." + std::to_string(rank));
  return v - 1;
}

CoxeterMatrix parse_matrix_form(std::string_view body) {
  // body: [[1,4],[4,1]]
  std::vector<std::vector<Label>> rows;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= body.size() || body[pos] != c) throw ParseError(std::string("expected '") + c + "' in matrix form");
    ++pos;
  };
  expect('[');
  skip_ws();
  while (true) {
    expect('[');
    std::vector<Label> row;
    while (true) {
      skip_ws();
      std::size_t start = pos;
      while (pos < body.size() && body[pos] != ',' && body[pos] != ']') ++pos;
      auto tok = body.substr(start, pos - start);
      auto v = parse_label(tok);
      if (!v) throw ParseError("bad matrix entry '" + trim(tok) + "'");
      row.push_back(*v);
      skip_ws();
      if (pos < body.size() && body[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
    rows.push_back(std::move(row));
    skip_ws();
    if (pos < body.size() && body[pos] == ',') {
      ++pos;
      continue;
    }
    expect(']');
    break;
  }
  skip_ws();
  if (pos != body.size()) throw ParseError("trailing characters after matrix");
  if (rows.empty()) throw InvalidMatrix("empty matrix");
  if (rows.size() > kMaxRank) throw InvalidMatrix("rank exceeds " + std::to_string(kMaxRank));
  return CoxeterMatrix::from_rows(rows);
}

}  // namespace

CoxeterMatrix parse_system(std::string_view text) {
  const std::string clean = trim(strip_comments(text));
  if (clean.empty()) throw ParseError("empty system description");
  if (clean.rfind("matrix", 0) == 0) return parse_matrix_form(std::string_view(clean).substr(6));

  std::vector<std::string> statements;
  {
    std::string cur;
    for (char c : clean) {
      if (c == ';' || c == '\n') {
        statements.push_back(trim(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    statements.push_back(trim(cur));
  }

  std::optional<CoxeterMatrix> m;
  std::vector<bool> assigned;
  for (const auto& st : statements) {
    if (st.empty()) continue;
    std::istringstream in(st);
    std::string head;
    in >> head;
    if (head == "rank") {
      if (m) throw ParseError("duplicate 'rank' statement");
      std::string n_tok, extra;
      if (!(in >> n_tok) || (in >> extra)) throw ParseError("expected 'rank <n>'");
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(n_tok.data(), n_tok.data() + n_tok.size(), n);
      if (ec != std::errc() || ptr != n_tok.data() + n_tok.size()) throw ParseError("bad rank '" + n_tok + "'");
      if (n == 0) throw InvalidMatrix("rank must be positive");
      if (n > kMaxRank) throw InvalidMatrix("rank exceeds " + std::to_string(kMaxRank));
      m.emplace(n);
      assigned.assign(n * n, false);
    } else if (head == "m") {
      if (!m) throw ParseError("'rank' must precede 'm' statements");
      std::string i_tok, j_tok, eq, k_tok, extra;
      if (!(in >> i_tok >> j_tok >> eq >> k_tok) || eq != "=" || (in >> extra))
        throw ParseError("expected 'm <i> <j> = <k|inf>', got '" + st + "'");
      const std::size_t i = parse_index(i_tok, m->rank());
      const std::size_t j = parse_index(j_tok, m->rank());
      auto k = parse_label(k_tok);
      if (!k) throw ParseError("bad label '" + k_tok + "'");
      if (i == j) {
        if (*k != 1) throw InvalidMatrix("diagonal entry m(" + i_tok + "," + j_tok + ") must be 1");
        continue;
      }
      if (*k == 0) throw InvalidMatrix("label 0 is not allowed (use inf)");
      if (*k == 1) throw InvalidMatrix("m(" + i_tok + "," + j_tok + ") = 1 off the diagonal");
      const std::size_t key = std::min(i, j) * m->rank() + std::max(i, j);
      if (assigned[key] && (*m)(i, j) != *k) throw InvalidMatrix("conflicting values for m(" + i_tok + "," + j_tok + ")");
      assigned[key] = true;
      m->set(i, j, *k);
    } else {
      throw ParseError("unknown statement '" + st + "'");
    }
  }
  if (!m) throw ParseError("missing 'rank' statement");
  return *m;
}

std::vector<GenSubset> irreducible_components(const CoxeterMatrix& m) {
  return irreducible_components(m, m.all());
}

std::vector<GenSubset> irreducible_components(const CoxeterMatrix& m, GenSubset within) {
  return DiagramGraph::cox_diagram(m).components(within);
}

bool is_even(const CoxeterMatrix& m) { return is_even(m, m.all()); }

bool is_even(const CoxeterMatrix& m, GenSubset within) {
  const auto idx = within.indices();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Label v = m(idx[a], idx[b]);
      if (!is_infinite(v) && v % 2 != 0) return false;
    }
  return true;
}

bool is_two_spherical(const CoxeterMatrix& m) {
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = i + 1; j < m.rank(); ++j)
      if (is_infinite(m(i, j))) return false;
  return true;
}

InducedSystem induced_system(const CoxeterMatrix& m, GenSubset t) {
  if (!t.is_subset_of(m.all())) throw IndexOutOfRange("subset " + t.to_string() + " exceeds rank " + std::to_string(m.rank()));
  InducedSystem out;
  out.parent_index = t.indices();
  out.matrix = CoxeterMatrix(out.parent_index.size());
  for (std::size_t a = 0; a < out.parent_index.size(); ++a)
    for (std::size_t b = a + 1; b < out.parent_index.size(); ++b)
      out.matrix.set(a, b, m(out.parent_index[a], out.parent_index[b]));
  return out;
}

}  // namespace coxrig
