#pragma once

// Arc diagrams of pair configurations {r_1, s_1, ..., r_n, s_n}: u-vectors,
// gap tags, free variables, isolated intervals, spanning sets and the m_j
// bookkeeping. Gaps are numbered 1..2n-1 (gap j lies between word positions
// j and j+1); p-indices are 1-based.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "silt/fbm.hpp"

namespace silt::arcs {

struct Endpoint {
  bool is_s = false;
  int k = 1;

  bool operator==(const Endpoint&) const = default;
  auto operator<=>(const Endpoint&) const = default;
};

class PairConfiguration {
 public:
  /// Throws std::invalid_argument unless word is a permutation of all 2n labels
  /// with r_k before s_k.
  explicit PairConfiguration(std::vector<Endpoint> word);
  /// Parses "r1,r2,s2,..." (commas and/or spaces).
  static PairConfiguration parse(const std::string& text);

  int n() const noexcept { return static_cast<int>(word_.size() / 2); }
  const std::vector<Endpoint>& word() const noexcept { return word_; }
  /// 1-based word positions of r_k and s_k.
  int r_position(int k) const { return r_pos_[static_cast<std::size_t>(k - 1)]; }
  int s_position(int k) const { return s_pos_[static_cast<std::size_t>(k - 1)]; }
  std::string to_string() const;

  bool operator==(const PairConfiguration& o) const { return word_ == o.word_; }

 private:
  std::vector<Endpoint> word_;
  std::vector<int> r_pos_, s_pos_;
};

/// All raw words for 1 <= n <= 5 in lexicographic order (r before s, then by
/// index). Throws DomainError for n > 5.
std::vector<PairConfiguration> enumerate_configurations(int n);

/// Relabels p's in order of first appearance; words equal up to relabeling
/// share a canonical form.
PairConfiguration canonical_form(const PairConfiguration& c);

/// Raw words grouped by canonical form, in order of first appearance.
std::vector<std::vector<PairConfiguration>> equivalence_classes(int n);

struct UVector {
  std::vector<int> coefficients;  // coefficient of p_k at index k - 1
  int gap_index = 0;

  bool operator==(const UVector&) const = default;
};

/// u_j = sum of p_k whose arc covers gap j, j = 1..2n-1.
std::vector<UVector> compute_u_vectors(const PairConfiguration& c);

enum class GapTag { increasing, decreasing };

/// Gap j is increasing iff u_j - u_{j-1} = +p_k, i.e. word position j is an r.
std::vector<GapTag> classify_gaps(const PairConfiguration& c);

struct FreeVariables {
  std::set<int> s_free;  // no s strictly inside (r_k, s_k)
  std::set<int> r_free;  // no r strictly inside (r_k, s_k)
};

FreeVariables find_free_variables(const PairConfiguration& c);

/// k with r_k and s_k adjacent in the word.
std::set<int> find_isolated_intervals(const PairConfiguration& c);

/// Rank over the rationals by fraction-free elimination.
int integer_rank(const std::vector<std::vector<long long>>& rows);
/// True iff the vectors span n-dimensional space.
bool verify_span(const std::vector<UVector>& vectors, int n);
/// span(a) == span(b).
bool same_span(const std::vector<std::vector<long long>>& a, const std::vector<std::vector<long long>>& b);

/// Lemma checks. increasing_clause: span of increasing u_j equals span of the
/// p_k that are not r-free (as literally stated). mirrored_increasing_clause:
/// span of u_j whose right endpoint (position j+1) is an r equals span of the
/// p_k that are not r-free. decreasing_clause: span of decreasing u_j equals
/// span of the p_k that are not s-free.
bool increasing_clause(const PairConfiguration& c);
bool mirrored_increasing_clause(const PairConfiguration& c);
bool decreasing_clause(const PairConfiguration& c);

/// Word reversed with r and s swapped (arc k maps to arc k).
PairConfiguration mirror(const PairConfiguration& c);

/// Connected components of the arc diagram (arcs linked when their intervals
/// overlap), each relabeled as its own configuration.
std::vector<PairConfiguration> connected_components(const PairConfiguration& c);

struct MAssignment {
  std::vector<int> m;  // m[j - 1] for gap j

  bool operator==(const MAssignment&) const = default;
  auto operator<=>(const MAssignment&) const = default;
};

/// Every endpoint gives one half-power to one of its two flanking gaps; terms
/// hitting the boundary gaps 0 or 2n vanish. Distinct resulting m-vectors, sorted.
std::vector<MAssignment> enumerate_m_assignments(const PairConfiguration& c);

bool has_consecutive_twos(const MAssignment& m);

struct SpanningSets {
  bool ok = false;
  std::set<int> a;  // increasing gaps plus chosen decreasing gaps
  std::set<int> b;  // decreasing gaps plus chosen increasing gaps
  std::string failure;
};

/// A: increasing gaps, augmented (when they do not already span) by one
/// decreasing gap inside the arc of each r-free p_k with m_j <= 1.
/// B: decreasing gaps, augmented likewise by one increasing gap inside the
/// arc of each s-free p_k with m_j <= 1. Both must reach full rank.
/// Requires no isolated intervals (DomainError otherwise).
SpanningSets build_spanning_sets(const PairConfiguration& c, const MAssignment& m);

enum class ExponentMode { y, eps, t };
enum class ExponentSetting { main, appendix };

struct ExponentReport {
  double d_value = 0.0;  // quantity compared against 1
  bool converges = false;
  std::vector<double> per_gap;  // per-gap exponents when an m-assignment is given
};

/// main, eps: 1/H - (1 + 2 lambda) > 1.
/// main, y:   1/H - (1 + lambda) > 1.
/// main, t:   gamma / H - 1 > 1.
/// appendix, y:   d = min(1/H - (1 + lambda)/2, 2 (1/H - (1 + lambda))) > 1.
/// appendix, eps: same with 2 lambda in place of lambda.
/// appendix, t:   min(gamma/H - 1/2, 2 (gamma/H - 1)) > 1.
/// With m given, per_gap[j - 1] is the denominator exponent of |u_j|:
/// 1/H - q m_j / 2 (q = 1 + lambda or 1 + 2 lambda), or gamma/H - m_j / 2 for t.
ExponentReport convergence_exponents(HurstParameter hurst, double lambda, double gamma, ExponentMode mode,
                                     ExponentSetting setting, const std::optional<MAssignment>& m = std::nullopt);

}  // namespace silt::arcs
