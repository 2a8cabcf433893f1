#pragma once

#include <functional>

#include "regulus/cad.hpp"

namespace regulus {

enum class Rel { LT, LE, EQ, NE, GT, GE };

bool rel_holds(Rel r, int sign);
std::string rel_str(Rel r);

// Boolean formula over polynomial sign atoms.
struct SAFormula;
using SAFormulaPtr = std::shared_ptr<const SAFormula>;

struct SAFormula {
  enum Kind { kTrue, kFalse, kAtom, kAnd, kOr, kNot } kind = kTrue;
  Polynomial poly;  // atom
  Rel rel = Rel::EQ;
  std::vector<SAFormulaPtr> children;

  static SAFormulaPtr make_true();
  static SAFormulaPtr make_false();
  static SAFormulaPtr atom(Polynomial p, Rel r);
  static SAFormulaPtr conj(std::vector<SAFormulaPtr> cs);
  static SAFormulaPtr disj(std::vector<SAFormulaPtr> cs);
  static SAFormulaPtr negate(SAFormulaPtr c);

  bool eval(const std::function<int(const Polynomial&)>& sign_of) const;
  void collect_polys(std::vector<Polynomial>& out) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

// A semi-algebraic subset of the ambient variety (all of R^n when the
// generator list is empty): { x : gens vanish and formula holds }.
struct SASet {
  std::vector<std::string> vars;
  SAFormulaPtr formula;
  std::vector<Polynomial> ambient_variety;  // empty = R^n

  static SASet whole(std::vector<std::string> vars);
  static SASet empty(std::vector<std::string> vars);
  static SASet from_atom(std::vector<std::string> vars, Polynomial p, Rel r);

  std::vector<Polynomial> all_polys() const;  // atoms plus ambient generators
  std::string to_string() const;
  nlohmann::json to_json() const;
};

SASet set_and(const SASet& a, const SASet& b);
SASet set_or(const SASet& a, const SASet& b);
SASet set_not(const SASet& a);  // complement within the ambient variety

// Text syntax: atoms `p > 0`, `p >= 0`, `p = 0`, `p != 0`, `p < 0`, `p <= 0`,
// combinators and/or/not, parentheses, plus the constants true/false.
SASet parse_saset(const std::string& text, const std::vector<std::string>& vars);

// Zariski-closed sets (common zeros of the generators).
struct Variety {
  std::vector<std::string> vars;
  std::vector<Polynomial> gens;  // canonical: primitive squarefree, sorted

  static Variety whole(std::vector<std::string> vars) { return {std::move(vars), {}}; }
  static Variety empty_set(std::vector<std::string> vars);
  static Variety of(std::vector<std::string> vars, std::vector<Polynomial> gens);

  bool is_whole() const { return gens.empty(); }
  SASet as_saset() const;
  std::string to_string() const;
};

// Union of two varieties (pairwise products of generators).
Variety variety_union(const Variety& a, const Variety& b);

// ---------------------------------------------------------------------------
// CAD-backed operations. All are exact; sets are unions of cells of a CAD
// adapted to every atom polynomial plus the ambient generators.
// ---------------------------------------------------------------------------

// CAD adapted to the set (and optional extra polynomials).
DecompositionPtr adapted_cad(const SASet& S, CadCache& cache,
                             const std::vector<Polynomial>& extra = {}, bool thom = false);

// Which cells of D belong to S. Every atom of S must be an input of D.
std::vector<char> cells_of(const Decomposition& D, const SASet& S);

bool member(const SASet& S, Point pt);

int set_dimension(const SASet& S, CadCache& cache);
bool set_empty(const SASet& S, CadCache& cache);
bool sets_equal(const SASet& a, const SASet& b, CadCache& cache);

// Cell-level topology within the cells selected by `within` (pass all-ones
// for the whole ambient space).
std::vector<char> interior_cells(const Decomposition& D, const std::vector<char>& sel,
                                 const std::vector<char>& within);
std::vector<char> boundary_cells(const Decomposition& D, const std::vector<char>& sel,
                                 const std::vector<char>& within);

// Renders a union of cells of a Thom-built decomposition as sign conditions.
SASet cells_to_saset(const Decomposition& D, const std::vector<char>& sel);

// Bd(S) = closure(S) minus interior(S), relative to the ambient variety.
SASet boundary(const SASet& S, CadCache& cache);

// Euclidean closure of S, rendered through Thom sign conditions.
SASet closure_set(const SASet& S, CadCache& cache);

// Substitutes rational pins (from axis-aligned variety generators) into every
// atom, dropping the pinned variables; exactness route for 3-variable sets on
// coordinate subspaces.
SASet reduce_saset(const SASet& S, const std::vector<std::pair<std::string, Rational>>& pins);

// Zariski closure of a union of cells: vanishing irreducibles for curve
// cells, exact point components for 0-cells. Also reports V as a cell set.
struct ZarClosure {
  Variety variety;
  std::vector<char> cells;
};
ZarClosure zariski_closure_cells(const Decomposition& D, const std::vector<char>& sel);
Variety zariski_closure(const SASet& S, CadCache& cache);
bool is_zariski_closed(const SASet& S, CadCache& cache);

struct PrincipalReport {
  bool principal = false;
  std::optional<Point> witness;  // a point of S inside Zar(Bd S), when any
  Variety boundary_closure;
};
// Theorem-C criterion: S principal iff S does not meet the Zariski closure of
// its boundary. Exact for S = S(f) with f regulous; reported as the bare
// criterion value otherwise.
PrincipalReport is_principal_open(const SASet& S, CadCache& cache);

}  // namespace regulus
