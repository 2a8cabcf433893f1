#pragma once

#include "regulus/forms.hpp"

namespace regulus {

struct SearchBudget {
  int const_budget = 20;   // constants 1, 2, 4, ..., 2^const_budget
  int exponent_budget = 4; // then c*(1 + sum x_i^(2e)) for e = 1..exponent_budget
  int max_odd_power = 9;   // odd exponents l = 1, 3, ..., max_odd_power
};

struct VerificationInfo {
  std::string mode = "exact";  // exact | slice-exact | sampled
  size_t cells = 0;
  std::vector<Rational> slices;
  unsigned seed = 0;
  size_t samples = 0;
  nlohmann::json to_json() const;
};

// A sign decomposition: a polynomial form whose signature matches sign(f).
struct SignDecomposition {
  SignForm form;
  int length_upper = 0;
  std::string method;
  bool verified = false;
  VerificationInfo verification;
  nlohmann::json to_json() const;
};

// Options shared by the verified constructions.
struct DecompOptions {
  SearchBudget budget;
  std::optional<SliceSpec> slices;  // 3-variable verification policy
  unsigned seed = 20240817;
  int sample_audit = 1000;
};

// The polar-sequence representation of Prop.-nbsignpol shape:
// <p0 q0> perp_i (<1, -(prod q_j)^2> tensor <p_i q_i>).
SignDecomposition decompose_nbsignpol(const RegulousTower& f, CadCache& cache,
                                      const DecompOptions& opt = {});

// Truncates the sum at the first level whose zero set is Zariski closed and
// finishes with a single polynomial there.
SignDecomposition decompose_truncated(const RegulousTower& f, CadCache& cache,
                                      const DecompOptions& opt = {});

// The dimension-at-most-one polar locus specialization (3-entry form).
SignDecomposition decompose_polar_dim1(const RegulousTower& f, CadCache& cache,
                                       const DecompOptions& opt = {});

struct Length1Result {
  bool representable = false;
  Polynomial poly;
  std::optional<Point> witness;  // a closure point missing from Z(f)
};
// Single-polynomial representation of sign(f); exists iff Z(f) is Zariski
// closed. Budget exhaustion throws BudgetError (distinct from the
// NotRepresentable outcome).
Length1Result construct_length1(const RegulousTower& f, CadCache& cache,
                                const DecompOptions& opt = {});

enum class LojKind { hl1, hl2, hl3, hl4 };

struct LojWitness {
  LojKind kind;
  Polynomial combined;  // the verified combination
  Polynomial h;         // the multiplier found (q for hl1)
  Polynomial p;         // positive cofactor (hl1/hl4)
  int l = 1;
  int budget_used = 0;
};

// Iterative-deepening search over the documented candidate ladder; each
// candidate is verified exactly on the target cells before being returned.
// hl2: finds (h, l) with sign((1+h^2) f + g^l) = sign(f) on target.
LojWitness loj_search_hl2(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget);
// hl1: finds (p, q), p from the positive ladder, q = m * q0^k with
// Z(q0) = closure^Zar(Z(f) cut with target), sign(p f + q g) = sign(f) there.
LojWitness loj_search_hl1(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget);
// hl3: strictly positive multiplier h, sign(h f + g^l) = sign(f) on target.
LojWitness loj_search_hl3(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget);

struct LojWitness4 {
  RegulousTower combined;
  Polynomial p, h;
  int budget_used = 0;
};
// hl4 on regulous inputs: p positive, h >= 0 polynomial multipliers with
// sign(p f + h g) = sign(f) on target.
LojWitness4 loj_search_hl4(const RegulousTower& f, const RegulousTower& g, const SASet& target,
                           CadCache& cache, const SearchBudget& budget);

struct PrincipalizeResult {
  bool principal = false;
  Polynomial r;  // S(r) = S(f) when principal
  std::optional<Point> witness;
  bool s_pq_equals_s = false;  // whether the naive S(pq) already equals S(f)
  std::string note;
};
// Theorem principal1/principal2: decides the criterion and runs the
// descending polar recursion to produce a polynomial r with S(r) = S(f).
PrincipalizeResult principalize(const RegulousTower& f, CadCache& cache,
                                const DecompOptions& opt = {});

// Theorem signprincipaux: builds a regulous g with sign(g) equal to the sign
// data (S_pos, S_neg, Z) out of the witnesses g1, g2, g3.
struct SignMatchResult {
  RegulousTower g;
  bool verified = false;
  LojWitness4 witness;
};
SignMatchResult sign_match_semialgebraic(const SASet& s_pos, const SASet& s_neg, const SASet& zero,
                                         const RegulousTower& g1, const RegulousTower& g2,
                                         const RegulousTower& g3, CadCache& cache,
                                         const DecompOptions& opt = {});

struct LengthReport {
  int upper = 0;
  int lower = 0;
  std::vector<std::string> basis;  // which tests and constructions applied
  nlohmann::json to_json() const;
};
LengthReport length_bound_report(const RegulousTower& f, CadCache& cache,
                                 const DecompOptions& opt = {});

}  // namespace regulus
