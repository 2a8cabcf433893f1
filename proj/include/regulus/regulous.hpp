#pragma once

#include "regulus/semialg.hpp"

namespace regulus {

// One level of a polar tower: the function equals p/q on variety \ next level,
// and Z(q) cut with the level variety is exactly the next level.
struct TowerLevel {
  Variety variety;
  Polynomial p, q;
};

// A regulous function presented by its polar sequence. The deepest level's q
// does not vanish on its variety.
struct RegulousTower {
  std::vector<std::string> vars;
  std::vector<TowerLevel> levels;

  int poldepth() const { return (int)levels.size() - 1; }
  const Variety& domain() const { return levels.front().variety; }

  // f as a polynomial p on the whole variety
  static RegulousTower from_poly(std::vector<std::string> vars, Variety on, Polynomial p);

  std::string to_string() const;
  nlohmann::json to_json() const;
  static RegulousTower from_json(const nlohmann::json& j);
};

struct TowerCheck {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

struct SliceSpec {
  std::string axis;                    // substituted variable for 3-var input
  std::vector<Rational> values;        // slice values
  static SliceSpec defaults(const std::string& axis);
};

// Verifies the tower invariants: nested varieties with strictly decreasing
// dimension, Z(q_i) on X_i equal to X_{i+1}, and a nonvanishing final q.
// Exact in <= 2 variables, slice-exact in 3. The codimension-2 polar lint
// lands in warnings.
TowerCheck validate_tower(const RegulousTower& f, CadCache& cache,
                          const SliceSpec* slices = nullptr);

struct EvalResult {
  Coordinate value;
  int level_used = 0;
};
EvalResult eval_tower(const RegulousTower& f, Point pt, CadCache& cache);
int tower_sign_at(const RegulousTower& f, Point& pt);

// Z(f), S(f), S(-f) as sign-condition sets on the level-0 variety.
SASet zero_set(const RegulousTower& f);
SASet pos_set(const RegulousTower& f);
SASet neg_set(const RegulousTower& f);
// stratum i as a set: X_i minus X_{i+1}
SASet stratum_set(const RegulousTower& f, size_t level);

// Restriction to a subvariety V of the domain: level varieties are cut with
// V, levels with empty strata are dropped.
RegulousTower restrict_tower(const RegulousTower& f, const Variety& v, CadCache& cache);

// Ring operations on towers over a common domain.
RegulousTower tower_negate(const RegulousTower& f);
RegulousTower tower_scale(const RegulousTower& f, const Polynomial& c);
RegulousTower tower_product(const RegulousTower& a, const RegulousTower& b, CadCache& cache);
RegulousTower tower_sum(const RegulousTower& a, const RegulousTower& b, CadCache& cache);
RegulousTower tower_square(const RegulousTower& f, CadCache& cache);

struct AuditPair {
  Point target;
  std::vector<Rational> gaps;  // |f(x_k) - f(w)| along the approach
  bool pass = true;
};
struct AuditReport {
  bool pass = true;
  std::vector<AuditPair> pairs;
  std::string note;
};
// Samples approaches to deeper-level points and checks the values converge
// below tol; report-only, never a proof of continuity.
AuditReport continuity_audit(const RegulousTower& f, CadCache& cache,
                             const std::vector<std::pair<Rational, Rational>>& box, int density,
                             const Rational& tol, unsigned seed);

// When every generator pins a variable to a rational (x - c), substitutes the
// pins and drops those variables; the exact-computation route for towers on
// coordinate-aligned subvarieties of R^3.
struct AxisPins {
  std::vector<std::pair<std::string, Rational>> pins;
  std::vector<Polynomial> residual_gens;
};
std::optional<AxisPins> axis_pins(const Variety& v);
RegulousTower reduce_tower(const RegulousTower& f, const AxisPins& pins);
Polynomial unreduce(const Polynomial& p);  // identity; reductions never rename

}  // namespace regulus
