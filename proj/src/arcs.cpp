#include "silt/arcs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "silt/error.hpp"

namespace silt::arcs {

PairConfiguration::PairConfiguration(std::vector<Endpoint> word) : word_(std::move(word)) {
  if (word_.empty() || word_.size() % 2 != 0) throw std::invalid_argument("word must have 2n labels, n >= 1");
  const std::size_t n = word_.size() / 2;
  r_pos_.assign(n, 0);
  s_pos_.assign(n, 0);
  for (std::size_t i = 0; i < word_.size(); ++i) {
    const Endpoint e = word_[i];
    if (e.k < 1 || static_cast<std::size_t>(e.k) > n) throw std::invalid_argument("label index out of range");
    auto& slot = e.is_s ? s_pos_[static_cast<std::size_t>(e.k - 1)] : r_pos_[static_cast<std::size_t>(e.k - 1)];
    if (slot != 0) throw std::invalid_argument("repeated label");
    slot = static_cast<int>(i) + 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (r_pos_[k] > s_pos_[k]) throw std::invalid_argument("s_k precedes r_k");
}

PairConfiguration PairConfiguration::parse(const std::string& text) {
  std::vector<Endpoint> word;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if ((token[0] != 'r' && token[0] != 's') || token.size() < 2)
      throw std::invalid_argument("bad label '" + token + "'");
    std::size_t used = 0;
    const int k = std::stoi(token.substr(1), &used);
    if (used != token.size() - 1) throw std::invalid_argument("bad label '" + token + "'");
    word.push_back({token[0] == 's', k});
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return PairConfiguration(std::move(word));
}

std::string PairConfiguration::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i != 0) os << ',';
    os << (word_[i].is_s ? 's' : 'r') << word_[i].k;
  }
  return os.str();
}

std::vector<PairConfiguration> enumerate_configurations(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (n > 5) throw DomainError("enumeration is limited to n <= 5");
  std::vector<PairConfiguration> out;
  std::vector<Endpoint> word;
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 unused, 1 r placed, 2 both placed
  auto rec = [&](auto&& self) -> void {
    if (word.size() == 2 * static_cast<std::size_t>(n)) {
      out.emplace_back(word);
      return;
    }
    for (int k = 1; k <= n; ++k) {
      int& st = state[static_cast<std::size_t>(k - 1)];
      if (st == 2) continue;
      word.push_back({st == 1, k});
      ++st;
      self(self);
      --st;
      word.pop_back();
    }
  };
  rec(rec);
  return out;
}

PairConfiguration canonical_form(const PairConfiguration& c) {
  std::map<int, int> relabel;
  std::vector<Endpoint> word;
  for (const Endpoint& e : c.word()) {
    if (!e.is_s) relabel.emplace(e.k, static_cast<int>(relabel.size()) + 1);
    word.push_back({e.is_s, relabel.at(e.k)});
  }
  return PairConfiguration(std::move(word));
}

std::vector<std::vector<PairConfiguration>> equivalence_classes(int n) {
  std::vector<std::vector<PairConfiguration>> classes;
  std::vector<PairConfiguration> keys;
  for (const PairConfiguration& c : enumerate_configurations(n)) {
    const PairConfiguration key = canonical_form(c);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      classes.push_back({c});
    } else {
      classes[static_cast<std::size_t>(it - keys.begin())].push_back(c);
    }
  }
  return classes;
}

std::vector<UVector> compute_u_vectors(const PairConfiguration& c) {
  const int n = c.n();
  std::vector<UVector> out;
  std::vector<int> u(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= 2 * n - 1; ++j) {
    const Endpoint e = c.word()[static_cast<std::size_t>(j - 1)];
    u[static_cast<std::size_t>(e.k - 1)] += e.is_s ? -1 : 1;
    out.push_back({u, j});
  }
  return out;
}

std::vector<GapTag> classify_gaps(const PairConfiguration& c) {
  std::vector<GapTag> tags;
  for (int j = 1; j <= 2 * c.n() - 1; ++j)
    tags.push_back(c.word()[static_cast<std::size_t>(j - 1)].is_s ? GapTag::decreasing : GapTag::increasing);
  return tags;
}

namespace {

// Labels strictly inside the arc of p_k.
bool arc_contains(const PairConfiguration& c, int k, bool want_s) {
  for (int pos = c.r_position(k) + 1; pos < c.s_position(k); ++pos)
    if (c.word()[static_cast<std::size_t>(pos - 1)].is_s == want_s) return true;
  return false;
}

std::vector<long long> unit(int k, int n) {
  std::vector<long long> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(k - 1)] = 1;
  return e;
}

std::vector<long long> widen(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

FreeVariables find_free_variables(const PairConfiguration& c) {
  FreeVariables f;
  for (int k = 1; k <= c.n(); ++k) {
    if (!arc_contains(c, k, true)) f.s_free.insert(k);
    if (!arc_contains(c, k, false)) f.r_free.insert(k);
  }
  return f;
}

std::set<int> find_isolated_intervals(const PairConfiguration& c) {
  std::set<int> out;
  for (int k = 1; k <= c.n(); ++k)
    if (c.s_position(k) == c.r_position(k) + 1) out.insert(k);
  return out;
}

int integer_rank(const std::vector<std::vector<long long>>& rows_in) {
  std::vector<std::vector<long long>> rows = rows_in;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t top = 0;
  for (std::size_t col = 0; col < cols && top < rows.size(); ++col) {
    std::size_t pivot = top;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[top], rows[pivot]);
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const long long a = rows[top][col], b = rows[r][col];
      long long g = 0;
      for (std::size_t q = 0; q < cols; ++q) {
        rows[r][q] = a * rows[r][q] - b * rows[top][q];
        g = std::gcd(g, rows[r][q]);
      }
      if (g > 1)
        for (long long& x : rows[r]) x /= g;
    }
    ++top;
    ++rank;
  }
  return rank;
}

bool verify_span(const std::vector<UVector>& vectors, int n) {
  std::vector<std::vector<long long>> rows;
  for (const UVector& v : vectors) {
    if (static_cast<int>(v.coefficients.size()) != n) throw std::invalid_argument("vector length differs from n");
    rows.push_back(widen(v.coefficients));
  }
  return integer_rank(rows) == n;
}

bool same_span(const std::vector<std::vector<long long>>& a, const std::vector<std::vector<long long>>& b) {
  std::vector<std::vector<long long>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const int rab = integer_rank(both);
  return integer_rank(a) == rab && integer_rank(b) == rab;
}

namespace {

std::vector<std::vector<long long>> gaps_where(const PairConfiguration& c, auto&& pred) {
  std::vector<std::vector<long long>> rows;
  for (const UVector& u : compute_u_vectors(c))
    if (pred(u.gap_index)) rows.push_back(widen(u.coefficients));
  return rows;
}

std::vector<std::vector<long long>> units_where(const PairConfiguration& c, const std::set<int>& excluded) {
  std::vector<std::vector<long long>> rows;
  for (int k = 1; k <= c.n(); ++k)
    if (!excluded.contains(k)) rows.push_back(unit(k, c.n()));
  return rows;
}

bool is_r_at(const PairConfiguration& c, int pos) { return !c.word()[static_cast<std::size_t>(pos - 1)].is_s; }

}  // namespace

bool increasing_clause(const PairConfiguration& c) {
  return same_span(gaps_where(c, [&](int j) { return is_r_at(c, j); }), units_where(c, find_free_variables(c).r_free));
}

bool mirrored_increasing_clause(const PairConfiguration& c) {
  return same_span(gaps_where(c, [&](int j) { return is_r_at(c, j + 1); }),
                   units_where(c, find_free_variables(c).r_free));
}

bool decreasing_clause(const PairConfiguration& c) {
  return same_span(gaps_where(c, [&](int j) { return !is_r_at(c, j); }),
                   units_where(c, find_free_variables(c).s_free));
}

PairConfiguration mirror(const PairConfiguration& c) {
  std::vector<Endpoint> word(c.word().rbegin(), c.word().rend());
  for (Endpoint& e : word) e.is_s = !e.is_s;
  return PairConfiguration(std::move(word));
}

std::vector<PairConfiguration> connected_components(const PairConfiguration& c) {
  const int n = c.n();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (c.r_position(a) < c.s_position(b) && c.r_position(b) < c.s_position(a)) parent[static_cast<std::size_t>(find(a - 1))] = find(b - 1);

  std::vector<int> roots;
  std::vector<std::vector<Endpoint>> words;
  for (const Endpoint& e : c.word()) {
    const int root = find(e.k - 1);
    auto it = std::find(roots.begin(), roots.end(), root);
    if (it == roots.end()) {
      roots.push_back(root);
      words.emplace_back();
      it = roots.end() - 1;
    }
    words[static_cast<std::size_t>(it - roots.begin())].push_back(e);
  }
  std::vector<PairConfiguration> out;
  for (auto& w : words) {
    std::map<int, int> relabel;
    for (Endpoint& e : w) {
      relabel.emplace(e.k, static_cast<int>(relabel.size()) + 1);
      e.k = relabel.at(e.k);
    }
    out.emplace_back(std::move(w));
  }
  return out;
}

std::vector<MAssignment> enumerate_m_assignments(const PairConfiguration& c) {
  const int n = c.n();
  const int positions = 2 * n;
  std::set<MAssignment> found;
  // Bit p of mask: endpoint at position p+1 gives its half-power to the gap on its right.
  for (unsigned mask = 0; mask < (1u << positions); ++mask) {
    MAssignment a{std::vector<int>(static_cast<std::size_t>(2 * n - 1), 0)};
    bool vanishes = false;
    for (int pos = 1; pos <= positions && !vanishes; ++pos) {
      const int gap = (mask >> (pos - 1) & 1u) ? pos : pos - 1;
      if (gap == 0 || gap == positions) {
        vanishes = true;
      } else {
        ++a.m[static_cast<std::size_t>(gap - 1)];
      }
    }
    if (!vanishes) found.insert(std::move(a));
  }
  std::vector<MAssignment> out(found.begin(), found.end());
  for (const MAssignment& a : out)
    if (has_consecutive_twos(a)) throw std::logic_error("m-assignment with consecutive 2s");
  return out;
}

bool has_consecutive_twos(const MAssignment& m) {
  for (std::size_t j = 0; j + 1 < m.m.size(); ++j)
    if (m.m[j] == 2 && m.m[j + 1] == 2) return true;
  return false;
}

SpanningSets build_spanning_sets(const PairConfiguration& c, const MAssignment& m) {
  const int n = c.n();
  if (!find_isolated_intervals(c).empty()) throw DomainError("configuration has isolated intervals");
  if (static_cast<int>(m.m.size()) != 2 * n - 1) throw std::invalid_argument("m-assignment length differs from 2n-1");
  const auto us = compute_u_vectors(c);
  const auto tags = classify_gaps(c);
  const FreeVariables free = find_free_variables(c);

  auto rows_of = [&](const std::set<int>& gaps) {
    std::vector<std::vector<long long>> rows;
    for (int j : gaps) rows.push_back(widen(us[static_cast<std::size_t>(j - 1)].coefficients));
    return rows;
  };
  // base: gaps with tag `own`; augment with gaps of the other tag inside each free arc.
  auto build = [&](GapTag own, const std::set<int>& free_vars, std::set<int>& out, std::string& failure) {
    for (int j = 1; j <= 2 * n - 1; ++j)
      if (tags[static_cast<std::size_t>(j - 1)] == own) out.insert(j);
    if (integer_rank(rows_of(out)) == n) return true;
    for (int k : free_vars) {
      bool chosen = false;
      for (int j = 1; j <= 2 * n - 1 && !chosen; ++j) {
        if (tags[static_cast<std::size_t>(j - 1)] == own) continue;
        if (us[static_cast<std::size_t>(j - 1)].coefficients[static_cast<std::size_t>(k - 1)] == 0) continue;
        if (m.m[static_cast<std::size_t>(j - 1)] > 1) continue;
        out.insert(j);
        chosen = true;
      }
      if (!chosen) {
        failure = "no admissible gap with m_j <= 1 for p" + std::to_string(k);
        return false;
      }
    }
    if (integer_rank(rows_of(out)) != n) {
      failure = "augmented set does not span";
      return false;
    }
    return true;
  };
  SpanningSets s;
  s.ok = build(GapTag::increasing, free.r_free, s.a, s.failure) && build(GapTag::decreasing, free.s_free, s.b, s.failure);
  return s;
}

ExponentReport convergence_exponents(HurstParameter hurst, double lambda, double gamma, ExponentMode mode,
                                     ExponentSetting setting, const std::optional<MAssignment>& m) {
  const double H = hurst.value();
  if (mode != ExponentMode::t && !(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  if (mode == ExponentMode::t && !(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  // Power of |p_k| per moment factor, and of |u_j| per unit of m_j.
  double power = 0.0;
  double base = 1.0 / H;
  switch (mode) {
    case ExponentMode::y: power = 1.0 + lambda; break;
    case ExponentMode::eps: power = 1.0 + 2.0 * lambda; break;
    case ExponentMode::t:
      power = 1.0;
      base = gamma / H;
      break;
  }
  ExponentReport r;
  if (setting == ExponentSetting::main) {
    r.d_value = base - power;
  } else {
    r.d_value = std::min(base - power / 2.0, 2.0 * (base - power));
  }
  r.converges = r.d_value > 1.0;
  if (m)
    for (int mj : m->m) r.per_gap.push_back(base - power * mj / 2.0);
  return r;
}

}  // namespace silt::arcs
