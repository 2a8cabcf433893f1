#pragma once

#include <map>
#include <memory>
#include <set>

#include "regulus/algebraic.hpp"

#include <json.hpp>

namespace regulus {

// One cell of a cylindrical decomposition of R^1 or R^2. Base cells alternate
// sector/section: even base/stack indices are open intervals, odd ones are
// points. dim = number of open directions.
struct CadCell {
  int index = 0;
  int dim = 0;
  int base_index = 0;
  int stack_index = -1;  // -1 in ambient dimension 1
  Point sample;
  std::vector<int> input_signs;
  std::vector<int> basis_signs;
  std::vector<int> thom_base_signs;
  std::vector<int> thom_fiber_signs;
};

class CadCache;

// Sign-invariant decomposition adapted to `inputs`. Immutable once built.
class Decomposition {
 public:
  int ambient_dim = 1;
  std::vector<std::string> vars;  // vars[0] is the base variable
  std::vector<Polynomial> inputs;
  std::vector<Polynomial> basis;        // irreducible basis of the inputs + projection
  std::vector<Polynomial> base_basis;   // subset of basis in vars[0] only (2D)
  std::vector<Polynomial> thom_base;    // derivative-closed base family (when built)
  std::vector<Polynomial> thom_fiber;   // derivative-closed fiber family (when built)
  std::vector<CadCell> cells;
  std::vector<AlgebraicNumber> base_roots;
  std::vector<int> stack_offset;    // per base cell: index of its first cell
  std::vector<int> stack_sections;  // per base cell: number of sections
  std::vector<std::vector<int>> closure;  // per cell: sorted cell ids of its closure
  // factorization of each input over `basis`: sign unit and (basis id, mult)
  struct InputFactors {
    int unit = 1;
    std::vector<std::pair<int, int>> parts;
  };
  std::vector<InputFactors> input_factors;

  size_t cell_count() const { return cells.size(); }
  int base_cell_count() const { return 2 * (int)base_roots.size() + 1; }

  // Exact sign of an arbitrary polynomial at the cell's sample point. Only
  // sign-invariant inputs give a cell-wide meaning; callers adapt their CADs.
  int sign_at_sample(int cell, const Polynomial& p) const;
  // Sign via the recorded factorization (p must be an input).
  int input_sign(int cell, int input_id) const { return cells[(size_t)cell].input_signs[(size_t)input_id]; }
  int find_input(const Polynomial& p) const;

  // chi_c of the union of selected cells.
  long euler_char(const std::vector<char>& selected) const;
  // Cell containing an all-rational point.
  int locate(const std::vector<Rational>& pt) const;
  // Closure of a union of cells, as a cell set.
  std::vector<char> closure_of(const std::vector<char>& selected) const;

  // Three extra rational-ish sample points inside a cell of dimension >= 1
  // (for the sign-invariance property test).
  std::vector<Point> extra_samples(int cell, int count) const;

  // Fiber section roots over an arbitrary rational base point (memoized).
  std::vector<AlgebraicNumber> fiber_roots_at(const Rational& x) const;

  nlohmann::json to_json() const;

 private:
  friend class CadBuilder;
  mutable std::map<Rational, std::vector<AlgebraicNumber>> fiber_cache_;
};

using DecompositionPtr = std::shared_ptr<const Decomposition>;

// Factorization memo plus decomposition memo, single-writer.
class CadCache {
 public:
  FactorCache factors;

  DecompositionPtr lookup(const std::string& key) const {
    auto it = memo_.find(key);
    return it == memo_.end() ? nullptr : it->second;
  }
  void store(const std::string& key, DecompositionPtr d) { memo_[key] = std::move(d); }

 private:
  std::map<std::string, DecompositionPtr> memo_;
};

// Sign-invariant CAD of R^vars.size() for the given polynomials.
// `thom` additionally closes the family under derivatives so that every cell
// is describable by sign conditions alone.
DecompositionPtr decompose(std::vector<Polynomial> polys, const std::vector<std::string>& vars,
                           CadCache& cache, bool thom = false);

// Substitutes `value` for `axis` and decomposes the 2-variable slice.
DecompositionPtr slice3(const std::vector<Polynomial>& polys, const std::string& axis,
                        const Rational& value, const std::vector<std::string>& all_vars,
                        CadCache& cache);

// Deterministic jittered grid with exact sign vectors.
struct GridPoint {
  std::vector<Rational> coords;
  std::vector<int> signs;
};
std::vector<GridPoint> sample_grid(const std::vector<Polynomial>& polys,
                                   const std::vector<std::string>& vars,
                                   const std::vector<std::pair<Rational, Rational>>& box,
                                   int density, unsigned seed);

}  // namespace regulus
