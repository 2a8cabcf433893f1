#include "regulus/cad.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <sstream>

namespace regulus {

namespace {

Rational simplest_in(const Rational& a, const Rational& b) {
  // smallest-denominator rational in [a, b]
  Integer ca, fb;
  mpz_cdiv_q(ca.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_fdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  if (ca <= fb) {
    if (sign_of(a) <= 0 && sign_of(b) >= 0) return Rational(0);
    return sign_of(a) > 0 ? Rational(ca) : Rational(fb);
  }
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  Rational fn(n);
  Rational inner = simplest_in(Rational(1) / (b - fn), Rational(1) / (a - fn));
  return fn + Rational(1) / inner;
}

bool poly_in(const std::vector<Polynomial>& list, const Polynomial& p) {
  for (const auto& q : list)
    if (q == p) return true;
  return false;
}

void add_unique(std::vector<Polynomial>& list, const Polynomial& p) {
  if (!poly_in(list, p)) list.push_back(p);
}

std::string cad_key(const std::vector<Polynomial>& polys, const std::vector<std::string>& vars,
                    bool thom) {
  std::vector<std::string> ss;
  ss.reserve(polys.size());
  for (const auto& p : polys) ss.push_back(p.to_string());
  std::sort(ss.begin(), ss.end());
  std::string key = thom ? "T|" : "P|";
  for (const auto& v : vars) key += v + ",";
  key += "|";
  for (const auto& s : ss) key += s + ";";
  return key;
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Distinct real roots of the product of the specialized section polynomials;
// which[k] lists the section indices vanishing at root k.
struct RationalStack {
  std::vector<AlgebraicNumber> roots;
  std::vector<std::vector<int>> which;
};

RationalStack rational_stack(const std::vector<UPoly>& specialized) {
  RationalStack st;
  UPoly prod = UPoly::constant(1);
  for (const auto& u : specialized) {
    if (u.is_zero()) throw DomainError("rational_stack: nullified section polynomial");
    prod = prod * u;
  }
  if (prod.degree() < 1) return st;
  st.roots = real_roots(prod);
  st.which.resize(st.roots.size());
  for (size_t k = 0; k < st.roots.size(); ++k)
    for (size_t i = 0; i < specialized.size(); ++i)
      if (upoly_sign_at(specialized[i], st.roots[k]) == 0) st.which[k].push_back((int)i);
  return st;
}

}  // namespace

// ---------------------------------------------------------------------------
// builder
// ---------------------------------------------------------------------------

class CadBuilder {
 public:
  CadBuilder(std::vector<Polynomial> polys, const std::vector<std::string>& vars, CadCache& cache,
             bool thom)
      : cache_(cache), thom_(thom) {
    d_.vars = vars;
    d_.ambient_dim = (int)vars.size();
    d_.inputs = std::move(polys);
  }

  Decomposition build() {
    collect_basis();
    if (d_.ambient_dim == 1)
      build_1d();
    else
      build_2d();
    factor_inputs_over_basis();
    fill_input_signs();
    check_euler();
    return std::move(d_);
  }

 private:
  CadCache& cache_;
  bool thom_;
  Decomposition d_;
  std::vector<Polynomial> sections_;   // irreducible, fiber degree >= 1
  std::vector<Polynomial> base_only_;  // irreducible, base variable only
  std::vector<int> section_basis_ids_;
  std::vector<int> base_root_poly_;  // per base root: id of its defining basis poly

  const std::string& bx() const { return d_.vars[0]; }
  const std::string& fy() const { return d_.vars[1]; }

  void note_factor(const Polynomial& f) {
    if (f.is_constant()) return;
    if (d_.ambient_dim == 2 && f.degree_in(fy()) >= 1)
      add_unique(sections_, f);
    else
      add_unique(base_only_, f);
  }

  void collect_basis() {
    for (const auto& p : d_.inputs) {
      if (p.is_zero() || p.is_constant()) continue;
      for (const auto& v : p.vars())
        if (std::find(d_.vars.begin(), d_.vars.end(), v) == d_.vars.end())
          throw DomainError("decompose: input uses variable outside the ambient context: " + v);
      for (const auto& [f, m] : cache_.factors.factors(p)) note_factor(f);
    }
    if (thom_ && d_.ambient_dim == 2) {
      // close the fiber family under d/dy; derivatives are kept unfactored
      // for the sign conditions, their factors join the section basis
      std::vector<Polynomial> queue = sections_;
      while (!queue.empty()) {
        Polynomial q = queue.back();
        queue.pop_back();
        add_unique(d_.thom_fiber, q);
        Polynomial der = q.derivative(fy());
        while (!der.is_zero() && !der.is_constant()) {
          add_unique(d_.thom_fiber, der);
          for (const auto& [f, m] : cache_.factors.factors(der)) {
            if (f.is_constant()) continue;
            if (f.degree_in(fy()) >= 1) {
              if (!poly_in(sections_, f)) {
                sections_.push_back(f);
                queue.push_back(f);
              }
            } else {
              add_unique(base_only_, f);
            }
          }
          der = der.derivative(fy());
        }
      }
    }
  }

  void close_base_family(std::vector<Polynomial>& base_family) {
    if (!thom_) return;
    std::vector<Polynomial> queue = base_family;
    while (!queue.empty()) {
      Polynomial q = queue.back();
      queue.pop_back();
      add_unique(d_.thom_base, q);
      Polynomial der = q.derivative(bx());
      while (!der.is_zero() && !der.is_constant()) {
        add_unique(d_.thom_base, der);
        for (const auto& [f, m] : cache_.factors.factors(der)) {
          if (f.is_constant()) continue;
          if (!poly_in(base_family, f)) {
            base_family.push_back(f);
            queue.push_back(f);
          }
        }
        der = der.derivative(bx());
      }
    }
  }

  static void sort_canonical(std::vector<Polynomial>& v) {
    std::sort(v.begin(), v.end(),
              [](const Polynomial& a, const Polynomial& b) { return Polynomial::compare(a, b) < 0; });
  }

  int basis_id(const Polynomial& p) const {
    for (size_t i = 0; i < d_.basis.size(); ++i)
      if (d_.basis[i] == p) return (int)i;
    throw DomainError("basis_id: polynomial not in basis");
  }

  // ----- base phase -----

  void build_base_roots(const std::vector<Polynomial>& base_family) {
    struct Tagged {
      AlgebraicNumber root;
      int poly_id;
    };
    std::vector<Tagged> all;
    for (const auto& b : base_family) {
      int id = basis_id(b);
      for (auto& r : real_roots(UPoly::from_poly(b))) all.push_back({std::move(r), id});
    }
    std::sort(all.begin(), all.end(),
              [](Tagged& a, Tagged& b) { return AlgebraicNumber::compare(a.root, b.root) < 0; });
    for (auto& t : all) {
      d_.base_roots.push_back(std::move(t.root));
      base_root_poly_.push_back(t.poly_id);
    }
    for (size_t i = 0; i + 1 < d_.base_roots.size(); ++i) {
      while (!(d_.base_roots[i].hi() < d_.base_roots[i + 1].lo())) {
        d_.base_roots[i].refine();
        d_.base_roots[i + 1].refine();
      }
    }
  }

  Rational base_sector_sample(int k) const {
    const auto& R = d_.base_roots;
    if (R.empty()) return Rational(0);
    if (k == 0) {
      Integer f;
      const Rational& q = R[0].lo();
      mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      return Rational(f) - 1;
    }
    if (k == (int)R.size()) {
      Integer c;
      const Rational& q = R.back().hi();
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      return Rational(c) + 1;
    }
    return simplest_in(R[(size_t)k - 1].hi(), R[(size_t)k].lo());
  }

  int sign_of_base_poly_at(int id, const Coordinate& base_coord, int base_index) {
    if (base_index % 2 == 1 && base_root_poly_[(size_t)base_index / 2] == id) return 0;
    return sign_uni(d_.basis[(size_t)id], base_coord);
  }

  static int sign_uni(const Polynomial& p, const Coordinate& c) {
    UPoly u = UPoly::from_poly(p);
    if (std::holds_alternative<Rational>(c)) return u.sign_at(std::get<Rational>(c));
    AlgebraicNumber a = std::get<AlgebraicNumber>(c);
    return upoly_sign_at(u, a);
  }

  // ----- 1D -----

  void build_1d() {
    std::vector<Polynomial> base_family = base_only_;
    close_base_family(base_family);
    sort_canonical(base_family);
    d_.basis = base_family;
    d_.base_basis = base_family;
    build_base_roots(base_family);
    size_t m = d_.base_roots.size();
    for (size_t c = 0; c < 2 * m + 1; ++c) {
      CadCell cell;
      cell.index = (int)c;
      cell.base_index = (int)c;
      cell.stack_index = -1;
      cell.dim = (c % 2 == 0) ? 1 : 0;
      Coordinate coord = (c % 2 == 0) ? Coordinate(base_sector_sample((int)c / 2))
                                      : Coordinate(d_.base_roots[c / 2]);
      Point pt;
      pt.vars = d_.vars;
      pt.coords.push_back(coord);
      cell.sample = std::move(pt);
      for (size_t i = 0; i < d_.basis.size(); ++i)
        cell.basis_signs.push_back(sign_of_base_poly_at((int)i, coord, (int)c));
      for (const auto& t : d_.thom_base) cell.thom_base_signs.push_back(sign_uni(t, coord));
      d_.cells.push_back(std::move(cell));
    }
    d_.stack_offset.assign(2 * m + 1, 0);
    std::iota(d_.stack_offset.begin(), d_.stack_offset.end(), 0);
    d_.stack_sections.assign(2 * m + 1, 0);
    d_.closure.resize(d_.cells.size());
    for (size_t c = 0; c < d_.cells.size(); ++c) {
      d_.closure[c].push_back((int)c);
      if (c % 2 == 0) {
        if (c > 0) d_.closure[c].push_back((int)c - 1);
        if (c + 1 < d_.cells.size()) d_.closure[c].push_back((int)c + 1);
      }
      std::sort(d_.closure[c].begin(), d_.closure[c].end());
    }
  }

  // ----- 2D -----

  struct Stack {
    std::vector<AlgebraicNumber> roots;
    std::vector<std::vector<int>> sec_signs;     // per root: sign of each section poly
    std::vector<Rational> sector_samples;        // size roots+1
    std::vector<std::vector<int>> sector_signs;  // per sector: sign of each section poly
  };

  void build_2d() {
    std::vector<Polynomial> base_family = base_only_;
    auto add_projection = [&](const Polynomial& p) {
      if (p.is_zero()) throw DomainError("projection produced the zero polynomial");
      if (p.is_constant()) return;
      for (const auto& [f, m] : cache_.factors.factors(p)) {
        if (f.is_constant()) continue;
        if (f.degree_in(fy()) >= 1)
          throw DomainError("projection output involves the fiber variable");
        add_unique(base_family, f);
      }
    };
    for (const auto& p : sections_) {
      Polynomial lc = p.leading_coeff_in(fy());
      if (!lc.is_constant()) add_projection(lc);
      Polynomial disc = discriminant_like(p, fy());
      add_projection(disc);
    }
    for (size_t i = 0; i < sections_.size(); ++i)
      for (size_t j = i + 1; j < sections_.size(); ++j)
        add_projection(resultant(sections_[i], sections_[j], fy()));
    close_base_family(base_family);
    sort_canonical(base_family);
    sort_canonical(sections_);
    d_.base_basis = base_family;
    d_.basis = base_family;
    for (const auto& s : sections_) d_.basis.push_back(s);
    for (const auto& s : sections_) section_basis_ids_.push_back(basis_id(s));

    build_base_roots(base_family);
    size_t m = d_.base_roots.size();
    size_t n_base_cells = 2 * m + 1;

    std::vector<Stack> stacks(n_base_cells);
    for (size_t b = 0; b < n_base_cells; ++b) {
      if (b % 2 == 0)
        stacks[b] = lift_rational(base_sector_sample((int)b / 2));
      else
        stacks[b] = lift_vertex(b / 2);
    }

    d_.stack_offset.assign(n_base_cells, 0);
    d_.stack_sections.assign(n_base_cells, 0);
    for (size_t b = 0; b < n_base_cells; ++b) {
      d_.stack_offset[b] = (int)d_.cells.size();
      const Stack& st = stacks[b];
      size_t r = st.roots.size();
      d_.stack_sections[b] = (int)r;
      Coordinate base_coord = (b % 2 == 0) ? Coordinate(base_sector_sample((int)b / 2))
                                           : Coordinate(d_.base_roots[b / 2]);
      std::vector<int> base_signs(base_family.size());
      for (size_t i = 0; i < base_family.size(); ++i)
        base_signs[i] = sign_of_base_poly_at((int)i, base_coord, (int)b);
      for (size_t s = 0; s < 2 * r + 1; ++s) {
        CadCell cell;
        cell.index = (int)d_.cells.size();
        cell.base_index = (int)b;
        cell.stack_index = (int)s;
        cell.dim = ((b % 2 == 0) ? 1 : 0) + ((s % 2 == 0) ? 1 : 0);
        Point pt;
        pt.vars = d_.vars;
        pt.coords.push_back(base_coord);
        if (s % 2 == 0)
          pt.coords.emplace_back(st.sector_samples[s / 2]);
        else
          pt.coords.emplace_back(st.roots[s / 2]);
        cell.sample = std::move(pt);
        cell.basis_signs.assign(d_.basis.size(), 0);
        for (size_t i = 0; i < base_family.size(); ++i) cell.basis_signs[i] = base_signs[i];
        for (size_t si = 0; si < sections_.size(); ++si) {
          int id = section_basis_ids_[si];
          cell.basis_signs[(size_t)id] =
              (s % 2 == 0) ? st.sector_signs[s / 2][si] : st.sec_signs[s / 2][si];
        }
        d_.cells.push_back(std::move(cell));
      }
    }
    fill_thom_signs();
    build_closure_2d(stacks);
  }

  int sign_from_factors(const CadCell& cell, const Polynomial& p) {
    if (p.is_zero()) return 0;
    if (p.is_constant()) return sign_of(p.constant_value());
    Rational unit;
    p.primitive(&unit);
    int s = sign_of(unit);
    for (const auto& [f, m] : cache_.factors.factors(p)) {
      int fs = cell.basis_signs[(size_t)basis_id(f)];
      if (fs == 0) return 0;
      if (m % 2 == 1) s *= fs;
    }
    return s;
  }

  void fill_thom_signs() {
    if (!thom_) return;
    for (auto& cell : d_.cells) {
      const Coordinate& bc = cell.sample.coords[0];
      for (const auto& t : d_.thom_base) cell.thom_base_signs.push_back(sign_uni(t, bc));
      for (const auto& t : d_.thom_fiber) cell.thom_fiber_signs.push_back(sign_from_factors(cell, t));
    }
  }

  Stack lift_rational(const Rational& x0) {
    std::vector<UPoly> spec;
    spec.reserve(sections_.size());
    for (const auto& p : sections_) spec.push_back(UPoly::from_poly(p.substitute(bx(), x0)));
    RationalStack rs = rational_stack(spec);
    Stack st;
    st.roots = std::move(rs.roots);
    size_t r = st.roots.size();
    st.sec_signs.resize(r);
    for (size_t k = 0; k < r; ++k) {
      st.sec_signs[k].resize(sections_.size());
      for (size_t i = 0; i < sections_.size(); ++i)
        st.sec_signs[k][i] = upoly_sign_at(spec[i], st.roots[k]);
    }
    fill_sector_data(st, [&](size_t i, const Rational& y) { return spec[i].sign_at(y); });
    return st;
  }

  Stack lift_vertex(size_t root_idx) {
    AlgebraicNumber& alpha = d_.base_roots[root_idx];
    if (alpha.is_rational()) return lift_rational(alpha.rat());
    const Polynomial& defining = d_.basis[(size_t)base_root_poly_[root_idx]];
    Stack st;
    NumberField K(UPoly::from_poly(defining), alpha.lo(), alpha.hi());
    std::vector<NFPoly> spec;
    spec.reserve(sections_.size());
    for (const auto& p : sections_) {
      NFPoly sp = nf_from_bivariate(K, p, bx(), fy());
      if (sp.is_zero()) throw DomainError("lift_vertex: nullified section polynomial");
      spec.push_back(std::move(sp));
    }
    // candidate fiber roots per section come from the rational resultant
    // res_x(defining, p); membership of each candidate is certified in
    // Q(alpha) by a small gcd, everything else is interval refinement
    std::vector<AlgebraicNumber> merged;
    for (size_t j = 0; j < sections_.size(); ++j) {
      if (spec[j].degree() < 1) continue;  // constant in y over this vertex
      Polynomial rp = resultant(defining, sections_[j], bx());
      if (rp.is_zero()) throw DomainError("lift_vertex: vanishing resultant");
      if (rp.is_constant()) continue;
      for (AlgebraicNumber& cand : real_roots(UPoly::from_poly(rp))) {
        if (nf_sign_at_q_root(K, spec[j], cand) != 0) continue;
        bool dup = false;
        for (auto& known : merged)
          if (AlgebraicNumber::compare(known, cand) == 0) {
            dup = true;
            break;
          }
        if (!dup) merged.push_back(std::move(cand));
      }
    }
    std::sort(merged.begin(), merged.end(),
              [](AlgebraicNumber& a, AlgebraicNumber& b) { return AlgebraicNumber::compare(a, b) < 0; });
    st.roots = std::move(merged);
    st.sec_signs.resize(st.roots.size());
    for (size_t k = 0; k < st.roots.size(); ++k) {
      st.sec_signs[k].resize(sections_.size());
      for (size_t i = 0; i < sections_.size(); ++i)
        st.sec_signs[k][i] = nf_sign_at_q_root(K, spec[i], st.roots[k]);
    }
    fill_sector_data(st,
                     [&](size_t i, const Rational& y) { return K.sign(nf_eval(K, spec[i], y)); });
    return st;
  }

  template <typename SignAt>
  void fill_sector_data(Stack& st, SignAt&& sign_at) {
    size_t r = st.roots.size();
    for (size_t k = 0; k + 1 < r; ++k)
      while (!(st.roots[k].hi() < st.roots[k + 1].lo())) {
        st.roots[k].refine();
        st.roots[k + 1].refine();
      }
    st.sector_samples.resize(r + 1);
    for (size_t k = 0; k <= r; ++k) {
      if (r == 0) {
        st.sector_samples[k] = Rational(0);
      } else if (k == 0) {
        Integer f;
        const Rational& q = st.roots[0].lo();
        mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        st.sector_samples[k] = Rational(f) - 1;
      } else if (k == r) {
        Integer c;
        const Rational& q = st.roots[r - 1].hi();
        mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        st.sector_samples[k] = Rational(c) + 1;
      } else {
        st.sector_samples[k] = simplest_in(st.roots[k - 1].hi(), st.roots[k].lo());
      }
    }
    st.sector_signs.resize(r + 1);
    for (size_t k = 0; k <= r; ++k) {
      st.sector_signs[k].resize(sections_.size());
      for (size_t i = 0; i < sections_.size(); ++i)
        st.sector_signs[k][i] = sign_at(i, st.sector_samples[k]);
    }
  }

  // ----- adjacency -----

  int variations_at_alpha(const std::vector<UPoly>& chain, const AlgebraicNumber& alpha) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
      AlgebraicNumber ac = alpha;
      signs.push_back(upoly_sign_at(q, ac));
    }
    return count_variations(signs);
  }

  // Limits of the interval-stack sections at the vertex: vertex section id,
  // or -1 (escape to -inf) or -2 (escape to +inf). dir = +1 when the interval
  // lies right of the vertex.
  std::vector<int> match_side(size_t root_idx, const Stack& vstack, const Stack& istack, int dir) {
    size_t n_sections = istack.roots.size();
    std::vector<int> limits(n_sections, -1);
    if (n_sections == 0) return limits;
    size_t rv = vstack.roots.size();
    if (rv == 0) return limits;  // no vertex sections: everything escapes
    std::vector<AlgebraicNumber> vroots = vstack.roots;
    for (size_t k = 0; k + 1 < vroots.size(); ++k)
      while (!(vroots[k].hi() < vroots[k + 1].lo())) {
        vroots[k].refine();
        vroots[k + 1].refine();
      }
    std::vector<Rational> walls;
    {
      Integer f;
      const Rational& q = vroots[0].lo();
      mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      walls.push_back(Rational(f) - 1);
    }
    for (size_t k = 0; k + 1 < rv; ++k)
      walls.push_back(simplest_in(vroots[k].hi(), vroots[k + 1].lo()));
    {
      Integer c;
      const Rational& q = vroots[rv - 1].hi();
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      walls.push_back(Rational(c) + 1);
    }
    Polynomial pstar = Polynomial::constant(1);
    for (const auto& p : sections_) pstar = pstar * p;
    AlgebraicNumber alpha = d_.base_roots[root_idx];
    std::vector<std::pair<UPoly, std::vector<UPoly>>> wall_data;
    for (const auto& w : walls) {
      UPoly uw = UPoly::from_poly(pstar.substitute(fy(), w));
      if (uw.is_zero()) throw DomainError("match_side: wall polynomial vanished");
      wall_data.emplace_back(uw, sturm_chain(uw));
    }
    Rational xp;
    int guard = 0;
    while (true) {
      if (++guard > 400) throw DomainError("match_side: certification did not stabilize");
      xp = dir > 0 ? alpha.hi() : alpha.lo();
      bool ok = true;
      for (auto& [uw, chain] : wall_data) {
        if (uw.degree() < 1) continue;  // constant, never crossed
        if (uw.sign_at(xp) == 0) {
          ok = false;
          break;
        }
        int va = variations_at_alpha(chain, alpha);
        int cnt = dir > 0 ? va - sign_variations_at(chain, xp) : sign_variations_at(chain, xp) - va;
        if (cnt != 0) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      alpha.refine();
    }
    // roots of the interval stack at the certified sample, counted per slot
    UPoly sx = UPoly::constant(1);
    for (const auto& p : sections_) sx = sx * UPoly::from_poly(p.substitute(bx(), xp));
    sx = squarefree_upoly(sx);
    std::vector<UPoly> sx_chain = sturm_chain(sx);
    int total = sturm_count_all(sx_chain);
    if ((size_t)total != n_sections)
      throw DomainError("match_side: stack size mismatch at certified sample");
    std::vector<int> counts;
    Rational below_lo = -root_bound(sx) - rat_abs(walls.front()) - 1;
    counts.push_back(sturm_count(sx_chain, below_lo, walls.front()));
    for (size_t k = 0; k + 1 < walls.size(); ++k)
      counts.push_back(sturm_count(sx_chain, walls[k], walls[k + 1]));
    int acc = 0;
    for (int cv : counts) acc += cv;
    counts.push_back(total - acc);
    size_t j = 0;
    for (size_t slot = 0; slot < counts.size(); ++slot)
      for (int t = 0; t < counts[slot]; ++t) {
        if (slot == 0)
          limits[j] = -1;
        else if (slot + 1 == counts.size())
          limits[j] = -2;
        else
          limits[j] = (int)slot - 1;
        ++j;
      }
    return limits;
  }

  void build_closure_2d(const std::vector<Stack>& stacks) {
    size_t n_base = stacks.size();
    size_t m = d_.base_roots.size();
    std::vector<std::array<std::vector<int>, 2>> limits(m);
    for (size_t v = 0; v < m; ++v) {
      limits[v][0] = match_side(v, stacks[2 * v + 1], stacks[2 * v], -1);
      limits[v][1] = match_side(v, stacks[2 * v + 1], stacks[2 * v + 2], +1);
    }
    d_.closure.resize(d_.cells.size());
    auto cell_id = [&](size_t b, size_t s) { return d_.stack_offset[b] + (int)s; };
    for (size_t b = 0; b < n_base; ++b) {
      size_t r = stacks[b].roots.size();
      for (size_t s = 0; s < 2 * r + 1; ++s) {
        int id = cell_id(b, s);
        std::set<int> cl;
        cl.insert(id);
        if (s % 2 == 0) {
          if (s > 0) cl.insert(cell_id(b, s - 1));
          if (s + 1 < 2 * r + 1) cl.insert(cell_id(b, s + 1));
        }
        if (b % 2 == 0) {
          for (int side = 0; side < 2; ++side) {
            bool has_vertex = (side == 0) ? (b > 0) : (b + 1 < n_base);
            if (!has_vertex) continue;
            size_t vb = (side == 0) ? b - 1 : b + 1;
            size_t v = vb / 2;
            const std::vector<int>& lim = limits[v][(side == 0) ? 1 : 0];
            size_t rv = stacks[vb].roots.size();
            if (s % 2 == 1) {
              int L = lim[s / 2];
              if (L >= 0) cl.insert(cell_id(vb, 2 * (size_t)L + 1));
            } else {
              if (rv == 0) {
                cl.insert(cell_id(vb, 0));
                continue;
              }
              int lo_enc = (s == 0) ? -1 : lim[s / 2 - 1];
              int hi_enc = (s == 2 * r) ? -2 : lim[s / 2];
              size_t slo = (lo_enc == -1) ? 0 : (lo_enc == -2 ? 2 * rv : 2 * (size_t)lo_enc + 1);
              size_t shi = (hi_enc == -2) ? 2 * rv : (hi_enc == -1 ? 0 : 2 * (size_t)hi_enc + 1);
              for (size_t t = slo; t <= shi && t < 2 * rv + 1; ++t) cl.insert(cell_id(vb, t));
            }
          }
        }
        d_.closure[(size_t)id].assign(cl.begin(), cl.end());
      }
    }
  }

  // ----- final bookkeeping -----

  void factor_inputs_over_basis() {
    for (const auto& p : d_.inputs) {
      Decomposition::InputFactors fi;
      if (p.is_zero()) {
        fi.unit = 0;
      } else if (p.is_constant()) {
        fi.unit = sign_of(p.constant_value());
      } else {
        Rational unit;
        p.primitive(&unit);
        fi.unit = sign_of(unit);
        for (const auto& [f, m] : cache_.factors.factors(p)) fi.parts.emplace_back(basis_id(f), m);
      }
      d_.input_factors.push_back(std::move(fi));
    }
  }

  void fill_input_signs() {
    for (auto& cell : d_.cells) {
      cell.input_signs.resize(d_.inputs.size());
      for (size_t i = 0; i < d_.inputs.size(); ++i) {
        const auto& fi = d_.input_factors[i];
        int s = fi.unit;
        for (const auto& [id, mult] : fi.parts) {
          int fs = cell.basis_signs[(size_t)id];
          if (fs == 0) {
            s = 0;
            break;
          }
          if (mult % 2 == 1) s *= fs;
        }
        cell.input_signs[i] = s;
      }
    }
  }

  void check_euler() {
    long chi = 0;
    for (const auto& c : d_.cells) chi += (c.dim % 2 == 0) ? 1 : -1;
    long expect = (d_.ambient_dim % 2 == 0) ? 1 : -1;
    if (chi != expect) throw DomainError("decomposition failed the Euler invariant");
  }
};

// ---------------------------------------------------------------------------
// Decomposition methods
// ---------------------------------------------------------------------------

int Decomposition::find_input(const Polynomial& p) const {
  for (size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i] == p) return (int)i;
  return -1;
}

int Decomposition::sign_at_sample(int cell, const Polynomial& p) const {
  Point pt = cells[(size_t)cell].sample;
  return sign_at_point(p, pt);
}

long Decomposition::euler_char(const std::vector<char>& selected) const {
  long chi = 0;
  for (size_t i = 0; i < cells.size(); ++i)
    if (selected[i]) chi += (cells[i].dim % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<AlgebraicNumber> Decomposition::fiber_roots_at(const Rational& x) const {
  auto it = fiber_cache_.find(x);
  if (it != fiber_cache_.end()) return it->second;
  UPoly prod = UPoly::constant(1);
  for (size_t i = base_basis.size(); i < basis.size(); ++i)
    prod = prod * UPoly::from_poly(basis[i].substitute(vars[0], x));
  std::vector<AlgebraicNumber> roots;
  if (prod.degree() >= 1) roots = real_roots(prod);
  fiber_cache_[x] = roots;
  return roots;
}

int Decomposition::locate(const std::vector<Rational>& pt) const {
  if ((int)pt.size() != ambient_dim) throw DomainError("locate: dimension mismatch");
  int base = 2 * (int)base_roots.size();
  for (size_t i = 0; i < base_roots.size(); ++i) {
    AlgebraicNumber r = base_roots[i];
    int c = r.compare_rational(pt[0]);
    if (c > 0) {
      base = 2 * (int)i;
      break;
    }
    if (c == 0) {
      base = 2 * (int)i + 1;
      break;
    }
  }
  if (ambient_dim == 1) return base;
  std::vector<AlgebraicNumber> roots;
  if (base % 2 == 1) {
    int off = stack_offset[(size_t)base];
    int r = stack_sections[(size_t)base];
    for (int k = 0; k < r; ++k)
      roots.push_back(std::get<AlgebraicNumber>(cells[(size_t)(off + 2 * k + 1)].sample.coords[1]));
  } else {
    roots = fiber_roots_at(pt[0]);
    if ((int)roots.size() != stack_sections[(size_t)base])
      throw DomainError("locate: fiber count mismatch");
  }
  int stack = 2 * (int)roots.size();
  for (size_t k = 0; k < roots.size(); ++k) {
    int c = roots[k].compare_rational(pt[1]);
    if (c > 0) {
      stack = 2 * (int)k;
      break;
    }
    if (c == 0) {
      stack = 2 * (int)k + 1;
      break;
    }
  }
  return stack_offset[(size_t)base] + stack;
}

std::vector<char> Decomposition::closure_of(const std::vector<char>& selected) const {
  std::vector<char> out(cells.size(), 0);
  for (size_t i = 0; i < cells.size(); ++i)
    if (selected[i])
      for (int j : closure[i]) out[(size_t)j] = 1;
  return out;
}

std::vector<Point> Decomposition::extra_samples(int cell_id, int count) const {
  const CadCell& cell = cells[(size_t)cell_id];
  std::vector<Point> out;
  if (cell.dim == 0) return out;
  auto between = [&](const Rational& lo, const Rational& hi, int i, int n) -> Rational {
    return lo + (hi - lo) * Rational(i + 1) / Rational(n + 1);
  };
  auto base_interval_points = [&](int b, int n) {
    std::vector<Rational> xs;
    size_t m = base_roots.size();
    Rational lo, hi;
    if (m == 0) {
      lo = Rational(-1);
      hi = Rational(1);
    } else if (b == 0) {
      hi = base_roots[0].lo();
      lo = hi - 2;
    } else if ((size_t)b == 2 * m) {
      lo = base_roots[m - 1].hi();
      hi = lo + 2;
    } else {
      AlgebraicNumber l = base_roots[(size_t)(b / 2 - 1)], r = base_roots[(size_t)(b / 2)];
      while (!(l.hi() < r.lo())) {
        l.refine();
        r.refine();
      }
      lo = l.hi();
      hi = r.lo();
    }
    for (int i = 0; i < n; ++i) xs.push_back(between(lo, hi, i, n));
    return xs;
  };
  if (ambient_dim == 1) {
    for (const auto& x : base_interval_points(cell.base_index, count)) {
      Point p;
      p.vars = vars;
      p.coords.emplace_back(x);
      out.push_back(std::move(p));
    }
    return out;
  }
  int b = cell.base_index, s = cell.stack_index;
  if (b % 2 == 1) {
    int off = stack_offset[(size_t)b];
    int r = stack_sections[(size_t)b];
    Rational ylo, yhi;
    if (r == 0) {
      ylo = Rational(-1);
      yhi = Rational(1);
    } else if (s == 0) {
      AlgebraicNumber up = std::get<AlgebraicNumber>(cells[(size_t)(off + 1)].sample.coords[1]);
      yhi = up.lo();
      ylo = yhi - 2;
    } else if (s == 2 * r) {
      AlgebraicNumber dn =
          std::get<AlgebraicNumber>(cells[(size_t)(off + 2 * r - 1)].sample.coords[1]);
      ylo = dn.hi();
      yhi = ylo + 2;
    } else {
      AlgebraicNumber dn = std::get<AlgebraicNumber>(cells[(size_t)(off + s - 1)].sample.coords[1]);
      AlgebraicNumber up = std::get<AlgebraicNumber>(cells[(size_t)(off + s + 1)].sample.coords[1]);
      while (!(dn.hi() < up.lo())) {
        dn.refine();
        up.refine();
      }
      ylo = dn.hi();
      yhi = up.lo();
    }
    for (int i = 0; i < count; ++i) {
      Point p;
      p.vars = vars;
      p.coords.push_back(cell.sample.coords[0]);
      p.coords.emplace_back(between(ylo, yhi, i, count));
      out.push_back(std::move(p));
    }
    return out;
  }
  for (const auto& x : base_interval_points(b, count)) {
    std::vector<AlgebraicNumber> roots = fiber_roots_at(x);
    if ((int)roots.size() != stack_sections[(size_t)b])
      throw DomainError("extra_samples: fiber count mismatch");
    Point p;
    p.vars = vars;
    p.coords.emplace_back(x);
    if (s % 2 == 1) {
      p.coords.emplace_back(roots[(size_t)(s / 2)]);
    } else {
      int r = (int)roots.size();
      Rational y;
      if (r == 0) {
        y = Rational(0);
      } else if (s == 0) {
        y = roots[0].lo() - 1;
      } else if (s == 2 * r) {
        y = roots[(size_t)(r - 1)].hi() + 1;
      } else {
        AlgebraicNumber dn = roots[(size_t)(s / 2 - 1)], up = roots[(size_t)(s / 2)];
        while (!(dn.hi() < up.lo())) {
          dn.refine();
          up.refine();
        }
        y = simplest_in(dn.hi(), up.lo());
      }
      p.coords.emplace_back(y);
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {
nlohmann::json coord_json(const Coordinate& c, const std::string& var) {
  if (std::holds_alternative<Rational>(c)) return rat_str(std::get<Rational>(c));
  const AlgebraicNumber& a = std::get<AlgebraicNumber>(c);
  if (a.is_rational()) return rat_str(a.rat());
  nlohmann::json j;
  j["poly"] = a.defining().to_poly(var).to_string();
  j["lo"] = rat_str(a.lo());
  j["hi"] = rat_str(a.hi());
  return j;
}
}  // namespace

nlohmann::json Decomposition::to_json() const {
  nlohmann::json j;
  j["ambient_dim"] = ambient_dim;
  nlohmann::json in = nlohmann::json::array();
  for (const auto& p : inputs) in.push_back(p.to_string());
  j["inputs"] = in;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json cj;
    cj["dim"] = c.dim;
    nlohmann::json sample = nlohmann::json::array();
    for (size_t i = 0; i < c.sample.coords.size(); ++i)
      sample.push_back(coord_json(c.sample.coords[i], vars[i]));
    cj["sample"] = sample;
    nlohmann::json signs = nlohmann::json::object();
    for (size_t i = 0; i < c.input_signs.size(); ++i) signs[std::to_string(i)] = c.input_signs[i];
    cj["signs"] = signs;
    cs.push_back(cj);
  }
  j["cells"] = cs;
  return j;
}

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

DecompositionPtr decompose(std::vector<Polynomial> polys, const std::vector<std::string>& vars,
                           CadCache& cache, bool thom) {
  if (vars.empty() || vars.size() > 2)
    throw DomainError("decompose: ambient dimension must be 1 or 2");
  std::vector<Polynomial> uniq;
  for (const auto& p : polys) add_unique(uniq, p);
  std::string key = cad_key(uniq, vars, thom);
  if (auto hit = cache.lookup(key)) return hit;
  CadBuilder builder(uniq, vars, cache, thom);
  auto result = std::make_shared<Decomposition>(builder.build());
  cache.store(key, result);
  return result;
}

DecompositionPtr slice3(const std::vector<Polynomial>& polys, const std::string& axis,
                        const Rational& value, const std::vector<std::string>& all_vars,
                        CadCache& cache) {
  auto it = std::find(all_vars.begin(), all_vars.end(), axis);
  if (it == all_vars.end()) throw DomainError("slice3: axis not among the variables");
  std::vector<std::string> rest;
  for (const auto& v : all_vars)
    if (v != axis) rest.push_back(v);
  if (rest.size() != 2) throw DomainError("slice3: expected exactly 3 variables");
  std::vector<Polynomial> sliced;
  for (const auto& p : polys) sliced.push_back(p.substitute(axis, value));
  return decompose(sliced, rest, cache);
}

std::vector<GridPoint> sample_grid(const std::vector<Polynomial>& polys,
                                   const std::vector<std::string>& vars,
                                   const std::vector<std::pair<Rational, Rational>>& box,
                                   int density, unsigned seed) {
  if (density < 1) throw DomainError("sample_grid: density must be >= 1");
  if (box.size() != vars.size()) throw DomainError("sample_grid: box/vars mismatch");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> jit(-(1L << 15), 1L << 15);
  std::vector<GridPoint> out;
  std::vector<size_t> idx(vars.size(), 0);
  while (true) {
    GridPoint gp;
    for (size_t i = 0; i < vars.size(); ++i) {
      const auto& [lo, hi] = box[i];
      Rational step = (hi - lo) / Rational(density);
      Rational center = lo + step * Rational(2 * (long)idx[i] + 1) / 2;
      Rational jr(jit(rng), 4L << 16);
      jr.canonicalize();
      gp.coords.push_back(center + step * jr);
    }
    std::vector<std::pair<std::string, Rational>> at;
    for (size_t i = 0; i < vars.size(); ++i) at.emplace_back(vars[i], gp.coords[i]);
    for (const auto& p : polys) gp.signs.push_back(sign_of(p.eval(at)));
    out.push_back(std::move(gp));
    size_t dpos = 0;
    while (dpos < idx.size()) {
      if (++idx[dpos] < (size_t)density) break;
      idx[dpos] = 0;
      ++dpos;
    }
    if (dpos == idx.size()) break;
  }
  return out;
}

}  // namespace regulus
