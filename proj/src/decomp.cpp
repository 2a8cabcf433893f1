#include "regulus/decomp.hpp"

#include <algorithm>

namespace regulus {

nlohmann::json VerificationInfo::to_json() const {
  nlohmann::json j;
  j["mode"] = mode;
  j["cells"] = cells;
  if (!slices.empty()) {
    nlohmann::json sl = nlohmann::json::array();
    for (const auto& v : slices) sl.push_back(rat_str(v));
    j["slices"] = sl;
    j["seed"] = seed;
    j["samples"] = samples;
  }
  return j;
}

nlohmann::json SignDecomposition::to_json() const {
  nlohmann::json j;
  j["method"] = method;
  j["form"] = form.to_string();
  j["length_upper"] = length_upper;
  j["verified"] = verified;
  j["verification"] = verification.to_json();
  return j;
}

nlohmann::json LengthReport::to_json() const {
  nlohmann::json j;
  j["upper"] = upper;
  j["lower"] = lower;
  j["basis"] = basis;
  return j;
}

namespace {

SASet with_ambient(SASet s, const Variety& X) {
  for (const auto& g : X.gens)
    if (std::find(s.ambient_variety.begin(), s.ambient_variety.end(), g) ==
        s.ambient_variety.end())
      s.ambient_variety.push_back(g);
  return s;
}

SASet poly_set(const std::vector<std::string>& vars, const Polynomial& p, Rel r,
               const Variety& X) {
  return with_ambient(SASet::from_atom(vars, p, r), X);
}

// candidate multipliers: 1, 2, 4, ..., 2^B, then 1 + sum x_i^(2e), e = 1..E
std::vector<Polynomial> positive_ladder(const std::vector<std::string>& vars,
                                        const SearchBudget& b) {
  std::vector<Polynomial> out;
  Rational c(1);
  for (int i = 0; i <= b.const_budget; ++i) {
    out.push_back(Polynomial::constant(c));
    c *= 2;
  }
  for (int e = 1; e <= b.exponent_budget; ++e) {
    Polynomial s = Polynomial::constant(1);
    for (const auto& v : vars) s = s + pow(Polynomial::variable(v), (unsigned)(2 * e));
    out.push_back(s);
  }
  return out;
}

Polynomial sum_of_squares(const Variety& v) {
  if (v.is_whole()) return Polynomial();  // vanishes everywhere
  Polynomial s;
  for (const auto& g : v.gens) s = s + g * g;
  if (s.is_zero()) s = Polynomial::constant(1);
  return s;
}

// sign agreement of `combined` with `model` on every cell of the target set;
// candidates start with a cheap screen at the target's own sample points, and
// factorization-cap overflows count as failures rather than errors
bool verify_on_target(const Polynomial& combined, const Polynomial& model, const SASet& target,
                      CadCache& cache) {
  try {
    auto Dt = adapted_cad(target, cache, {model});
    auto tsel = cells_of(*Dt, target);
    for (size_t c = 0; c < tsel.size(); ++c) {
      if (!tsel[c]) continue;
      Point pt = Dt->cells[c].sample;
      Point pt2 = pt;
      if (sign_at_point(combined, pt) != sign_at_point(model, pt2)) return false;
    }
    auto D = adapted_cad(target, cache, {combined, model});
    auto sel = cells_of(*D, target);
    int ic = D->find_input(combined), im = D->find_input(model);
    for (size_t c = 0; c < sel.size(); ++c) {
      if (!sel[c]) continue;
      int sc =
          ic >= 0 ? D->cells[c].input_signs[(size_t)ic] : sign_of(combined.constant_value());
      int sm = im >= 0 ? D->cells[c].input_signs[(size_t)im] : sign_of(model.constant_value());
      if (sc != sm) return false;
    }
    return true;
  } catch (const FactorError&) {
    return false;  // candidate beyond the factorization cap
  }
}

// Exact (<= 2 vars) or slice-exact similarity of `form` with <f>.
struct VerifyResult {
  bool ok = false;
  VerificationInfo info;
  std::optional<Point> witness;
};

VerifyResult verify_decomposition(const SignForm& form, const RegulousTower& f, CadCache& cache,
                                  const DecompOptions& opt) {
  VerifyResult out;
  Variety X = form.ambient;
  SignForm lhs = SignForm::of_tower(f, X);
  if (f.vars.size() <= 2) {
    auto rep = similar(lhs, form, cache);
    out.ok = rep.equal;
    out.witness = rep.witness;
    out.info.mode = "exact";
    ConstructibleFn sig = signature(form, cache);
    auto D = decompose(sig.all_polys(), f.vars, cache);
    out.info.cells = D->cells.size();
    return out;
  }
  SliceSpec slices = opt.slices ? *opt.slices : SliceSpec::defaults(f.vars.back());
  auto rep = similar_sliced(lhs, form, slices, opt.sample_audit, opt.seed, cache);
  out.ok = rep.equal;
  out.witness = rep.witness;
  out.info.mode = "slice-exact";
  out.info.slices = slices.values;
  out.info.seed = opt.seed;
  out.info.samples = rep.samples;
  return out;
}

// the nbsignpol form: <p0 q0>  perp_i  <1, -(q_0...q_{i-1})^2> tensor <p_i q_i>
SignForm nbsignpol_form(const RegulousTower& f, int upto_level, const Polynomial& tail,
                        bool use_tail) {
  // when use_tail, entries for level `upto_level` use `tail` instead of p*q
  Variety X = f.domain();
  std::vector<Polynomial> entries;
  if (use_tail && upto_level == 0) {
    entries.push_back(tail);
  } else {
    entries.push_back(f.levels[0].p * f.levels[0].q);
    Polynomial qprod = f.levels[0].q;
    int last = use_tail ? upto_level : (int)f.levels.size() - 1;
    for (int i = 1; i <= last; ++i) {
      Polynomial e = (use_tail && i == upto_level) ? tail : f.levels[(size_t)i].p * f.levels[(size_t)i].q;
      entries.push_back(e);
      entries.push_back(-(qprod * qprod) * e);
      if (i < last) qprod = qprod * f.levels[(size_t)i].q;
    }
  }
  return SignForm::of_polys(f.vars, X, entries);
}

}  // namespace

// ---------------------------------------------------------------------------
// loj searches
// ---------------------------------------------------------------------------

LojWitness loj_search_hl2(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget) {
  std::vector<Polynomial> hs = {Polynomial()};  // h = 0 first
  for (auto& h : positive_ladder(target.vars, budget)) hs.push_back(std::move(h));
  int used = 0;
  for (const auto& h : hs) {
    Polynomial mult = Polynomial::constant(1) + h * h;
    for (int l = 1; l <= budget.max_odd_power; l += 2) {
      ++used;
      Polynomial combined = mult * f + pow(g, (unsigned)l);
      if (verify_on_target(combined, f, target, cache)) {
        LojWitness w;
        w.kind = LojKind::hl2;
        w.combined = combined;
        w.h = h;
        w.l = l;
        w.budget_used = used;
        return w;
      }
    }
  }
  throw BudgetError("loj_search_hl2: budget exhausted");
}

LojWitness loj_search_hl3(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget) {
  int used = 0;
  for (const auto& h : positive_ladder(target.vars, budget)) {
    for (int l = 1; l <= budget.max_odd_power; l += 2) {
      ++used;
      Polynomial combined = h * f + pow(g, (unsigned)l);
      if (verify_on_target(combined, f, target, cache)) {
        LojWitness w;
        w.kind = LojKind::hl3;
        w.combined = combined;
        w.h = h;
        w.l = l;
        w.budget_used = used;
        return w;
      }
    }
  }
  throw BudgetError("loj_search_hl3: budget exhausted");
}

LojWitness loj_search_hl1(const Polynomial& f, const Polynomial& g, const SASet& target,
                          CadCache& cache, const SearchBudget& budget) {
  // q0 spans the Zariski closure of Z(f) cut with the target
  SASet zf_on_target = set_and(poly_set(target.vars, f, Rel::EQ, Variety::whole(target.vars)),
                               target);
  Variety W = zariski_closure(zf_on_target, cache);
  Polynomial q0 = sum_of_squares(W);
  int used = 0;
  std::vector<Polynomial> ladder = positive_ladder(target.vars, budget);
  for (const auto& p : ladder) {
    for (int k = 1; k <= 3; ++k) {
      Polynomial q0k = pow(q0, (unsigned)k);
      Rational m(1);
      for (int mi = 0; mi <= budget.const_budget; ++mi, m *= 2) {
        ++used;
        Polynomial q = Polynomial::constant(m) * q0k;
        Polynomial combined = p * f + q * g;
        if (verify_on_target(combined, f, target, cache)) {
          LojWitness w;
          w.kind = LojKind::hl1;
          w.combined = combined;
          w.h = q;
          w.p = p;
          w.l = k;
          w.budget_used = used;
          return w;
        }
      }
      if (q0.is_zero() || q0.is_constant()) break;  // powers add nothing
    }
  }
  throw BudgetError("loj_search_hl1: budget exhausted");
}

LojWitness4 loj_search_hl4(const RegulousTower& f, const RegulousTower& g, const SASet& target,
                           CadCache& cache, const SearchBudget& budget) {
  // h ranges over m * h0^k where h0 spans the Zariski closure of Z(f) cut
  // with the target (a polynomial h is regulous, and h0 >= 0 by construction)
  Variety X = f.domain();
  SASet zf = with_ambient(set_and(zero_set(f), target), X);
  Variety W = zariski_closure(zf, cache);
  Polynomial h0 = sum_of_squares(W);
  ConstructibleFn target_sig;
  {
    SignForm lhs = SignForm::of_tower(f, X);
    target_sig = signature(lhs, cache);
  }
  // cheap screen on the target's own samples first
  auto Dt = adapted_cad(target, cache, target_sig.all_polys());
  auto tscreen = cells_of(*Dt, target);
  int used = 0;
  std::vector<Polynomial> ladder = positive_ladder(f.vars, budget);
  for (const auto& p : ladder) {
    for (int k = 1; k <= 3; ++k) {
      Polynomial h0k = pow(h0, (unsigned)k);
      Rational m(1);
      for (int mi = 0; mi <= budget.const_budget; ++mi, m *= 2) {
        ++used;
        Polynomial h = Polynomial::constant(m) * h0k;
        try {
          RegulousTower combined = tower_sum(tower_scale(f, p), tower_scale(g, h), cache);
          bool screen_ok = true;
          for (size_t c = 0; c < tscreen.size() && screen_ok; ++c) {
            if (!tscreen[c]) continue;
            Point pt = Dt->cells[c].sample;
            Point pt2 = pt;
            if (tower_sign_at(combined, pt) != tower_sign_at(f, pt2)) screen_ok = false;
          }
          if (!screen_ok) continue;
          // full verification of sign(combined) = sign(f) on target cells
          ConstructibleFn cs = signature(SignForm::of_tower(combined, X), cache);
          std::vector<Polynomial> polys = cs.all_polys();
          for (const auto& q : target_sig.all_polys())
            if (std::find(polys.begin(), polys.end(), q) == polys.end()) polys.push_back(q);
          for (const auto& q : target.all_polys())
            if (std::find(polys.begin(), polys.end(), q) == polys.end()) polys.push_back(q);
          auto D = decompose(polys, f.vars, cache);
          auto tsel = cells_of(*D, target);
          auto va = cfn_cell_values(cs, *D);
          auto vb = cfn_cell_values(target_sig, *D);
          bool ok = true;
          for (size_t c = 0; c < tsel.size() && ok; ++c)
            if (tsel[c] && va[c] != vb[c]) ok = false;
          if (ok) {
            LojWitness4 w;
            w.combined = std::move(combined);
            w.p = p;
            w.h = h;
            w.budget_used = used;
            return w;
          }
        } catch (const FactorError&) {
          continue;
        }
      }
      if (h0.is_zero() || h0.is_constant()) break;
    }
  }
  throw BudgetError("loj_search_hl4: budget exhausted");
}

// ---------------------------------------------------------------------------
// decompositions
// ---------------------------------------------------------------------------

SignDecomposition decompose_nbsignpol(const RegulousTower& f, CadCache& cache,
                                      const DecompOptions& opt) {
  SignDecomposition out;
  out.method = "nbsignpol";
  out.form = nbsignpol_form(f, 0, Polynomial(), false);
  out.length_upper = 1 + 2 * f.poldepth();
  auto v = verify_decomposition(out.form, f, cache, opt);
  if (!v.ok)
    throw VerifyError("decompose_nbsignpol: similarity failed at " +
                      (v.witness ? v.witness->to_string() : std::string("?")) +
                      " (malformed tower?)");
  out.verified = true;
  out.verification = v.info;
  return out;
}

namespace {

// pins-aware Zariski-closedness of Z(f) cut with a level variety
std::optional<bool> level_zero_set_closed(const RegulousTower& f, size_t level, CadCache& cache) {
  SASet zi = set_and(zero_set(f), f.levels[level].variety.as_saset());
  zi.vars = f.vars;
  if (f.vars.size() <= 2) return is_zariski_closed(zi, cache);
  if (auto pins = axis_pins(f.levels[level].variety)) {
    SASet red = reduce_saset(zi, pins->pins);
    if (red.vars.size() <= 2) return is_zariski_closed(red, cache);
  }
  return std::nullopt;  // no exact route
}

}  // namespace

Length1Result construct_length1(const RegulousTower& f, CadCache& cache,
                                const DecompOptions& opt) {
  if (f.vars.size() > 2) {
    if (auto pins = axis_pins(f.domain())) {
      RegulousTower red = reduce_tower(f, *pins);
      if (red.vars.size() <= 2) return construct_length1(red, cache, opt);
    }
    throw DomainError("construct_length1: no exact route for this 3-variable domain");
  }
  Variety X = f.domain();
  SASet zf = with_ambient(zero_set(f), X);
  SASet xall = with_ambient(SASet::whole(f.vars), X);
  Length1Result out;
  if (sets_equal(zf, xall, cache)) {
    out.representable = true;
    out.poly = Polynomial();
    return out;
  }
  if (f.poldepth() == 0) {
    // regular function: sign(f) = sign(p*q) outright
    out.representable = true;
    out.poly = f.levels[0].p * f.levels[0].q;
    return out;
  }
  // Zariski-closedness with an explicit witness on failure
  {
    auto D = adapted_cad(zf, cache);
    auto sel = cells_of(*D, zf);
    ZarClosure z = zariski_closure_cells(*D, sel);
    SASet amb;
    amb.vars = f.vars;
    amb.formula = SAFormula::make_true();
    amb.ambient_variety = zf.ambient_variety;
    auto within = cells_of(*D, amb);
    for (size_t c = 0; c < sel.size(); ++c) {
      if (within[c] && z.cells[c] && !sel[c]) {
        out.representable = false;
        out.witness = D->cells[c].sample;
        return out;
      }
    }
  }
  // Z(f) is Zariski closed: the signsa construction applies
  PrincipalizeResult pr1 = principalize(f, cache, opt);
  if (!pr1.principal) throw VerifyError("construct_length1: S(f) unexpectedly obstructed");
  PrincipalizeResult pr2 = principalize(tower_negate(f), cache, opt);
  if (!pr2.principal) throw VerifyError("construct_length1: S(-f) unexpectedly obstructed");
  Polynomial p1 = pr1.r;
  Polynomial p2 = -pr2.r;
  Polynomial p3 = sum_of_squares(zariski_closure(zf, cache));
  p1 = p1 * p3 * p3;
  SASet sbar = with_ambient(set_or(pos_set(f), zero_set(f)), X);
  SASet zp1_bar = set_and(poly_set(f.vars, p1, Rel::EQ, X), sbar);
  Variety W = zariski_closure(zp1_bar, cache);
  Polynomial q0 = sum_of_squares(W);
  SignForm target = SignForm::of_tower(f, X);
  // sample screen against the tower's own adapted decomposition
  auto Ds = adapted_cad(xall, cache, zf.all_polys());
  auto xsel = cells_of(*Ds, xall);
  auto screen = [&](const Polynomial& h) {
    for (size_t c = 0; c < xsel.size(); ++c) {
      if (!xsel[c]) continue;
      Point pt = Ds->cells[c].sample;
      Point pt2 = pt;
      if (sign_at_point(h, pt) != tower_sign_at(f, pt2)) return false;
    }
    return true;
  };
  int used = 0;
  for (const auto& p : positive_ladder(f.vars, opt.budget)) {
    for (int k = 1; k <= 3; ++k) {
      Polynomial q0k = pow(q0, (unsigned)k);
      Rational m(1);
      for (int mi = 0; mi <= opt.budget.const_budget; ++mi, m *= 2) {
        ++used;
        Polynomial h = p * p1 + Polynomial::constant(m) * q0k * p2;
        try {
          if (!screen(h)) continue;
          SignForm cand = SignForm::of_polys(f.vars, X, {h});
          if (similar(cand, target, cache).equal) {
            out.representable = true;
            out.poly = h;
            return out;
          }
        } catch (const FactorError&) {
          continue;  // candidate beyond the factorization cap
        }
      }
      if (q0.is_zero() || q0.is_constant()) break;
    }
  }
  throw BudgetError("construct_length1: search budget exhausted after " + std::to_string(used) +
                    " candidates");
}

PrincipalizeResult principalize(const RegulousTower& f, CadCache& cache,
                                const DecompOptions& opt) {
  if (f.vars.size() > 2) {
    if (auto pins = axis_pins(f.domain())) {
      RegulousTower red = reduce_tower(f, *pins);
      if (red.vars.size() <= 2) return principalize(red, cache, opt);
    }
    throw DomainError("principalize: no exact route for this 3-variable domain");
  }
  Variety X = f.domain();
  SASet S = with_ambient(pos_set(f), X);
  PrincipalizeResult out;
  if (set_empty(S, cache)) {
    out.principal = true;
    out.r = Polynomial::constant(-1);
    out.note = "S(f) is empty";
    return out;
  }
  auto s_of = [&](const Polynomial& r) {
    return with_ambient(poly_set(f.vars, r, Rel::GT, X), X);
  };
  Polynomial pq = f.levels[0].p * f.levels[0].q;
  bool fast_path = f.poldepth() == 0;
  if (!fast_path) {
    SASet s_meets_pol = set_and(S, f.levels[1].variety.as_saset());
    fast_path = set_empty(s_meets_pol, cache);
  }
  if (fast_path) {
    if (!sets_equal(s_of(pq), S, cache))
      throw VerifyError("principalize: S(pq) failed to match S(f) off the polar locus");
    out.principal = true;
    out.r = pq;
    out.s_pq_equals_s = true;
    out.note = "S(f) misses the polar locus; r = p*q";
    return out;
  }
  out.s_pq_equals_s = sets_equal(s_of(pq), S, cache);
  // criterion of Theorem principal2
  auto crit = is_principal_open(S, cache);
  if (!crit.principal) {
    out.principal = false;
    out.witness = crit.witness;
    out.note = "S(f) meets the Zariski closure of its boundary";
    return out;
  }
  // descending recursion of Theorem principal1
  int k = f.poldepth();
  Polynomial r_next = f.levels[(size_t)k].p * f.levels[(size_t)k].q;
  for (int i = k - 1; i >= 0; --i) {
    const TowerLevel& L = f.levels[(size_t)i];
    SASet xi = L.variety.as_saset();
    xi.vars = f.vars;
    SASet Si = with_ambient(set_and(S, xi), X);
    SASet sr_next = with_ambient(set_and(s_of(r_next), xi), X);
    SASet F = with_ambient(set_and(closure_set(sr_next, cache), set_not(Si)), X);
    Polynomial minus_q2 = -(L.q * L.q);
    LojWitness w1 = loj_search_hl2(minus_q2, r_next, F, cache, opt.budget);
    Polynomial r_prime = w1.combined;
    SASet sr_prime = with_ambient(set_and(s_of(r_prime), xi), X);
    SASet C = with_ambient(set_and(closure_set(Si, cache), set_not(sr_prime)), X);
    SASet zp_on_c = set_and(poly_set(f.vars, L.p, Rel::EQ, X), C);
    Polynomial t = sum_of_squares(zariski_closure(zp_on_c, cache));
    LojWitness w2 = loj_search_hl2(L.p * L.q, t * t * r_prime, C, cache, opt.budget);
    r_next = w2.combined;
  }
  if (!sets_equal(s_of(r_next), S, cache))
    throw BudgetError("principalize: recursion finished but S(r) != S(f)");
  out.principal = true;
  out.r = r_next;
  out.note = out.s_pq_equals_s ? "" : "S(pq) != S(f); recursion used";
  return out;
}

SignDecomposition decompose_truncated(const RegulousTower& f, CadCache& cache,
                                      const DecompOptions& opt) {
  int k = f.poldepth();
  int t = -1;
  for (int i = 0; i <= k; ++i) {
    auto closed = level_zero_set_closed(f, (size_t)i, cache);
    if (closed && *closed) {
      t = i;
      break;
    }
  }
  if (t < 0)
    throw DomainError("decompose_truncated: no level with a certified Zariski-closed zero set");
  RegulousTower tail_tower = restrict_tower(f, f.levels[(size_t)t].variety, cache);
  Length1Result tail = construct_length1(tail_tower, cache, opt);
  if (!tail.representable)
    throw VerifyError("decompose_truncated: tail construction failed unexpectedly");
  SignDecomposition out;
  out.method = "truncated";
  out.form = nbsignpol_form(f, t, tail.poly, true);
  out.length_upper = 1 + 2 * t;
  auto v = verify_decomposition(out.form, f, cache, opt);
  if (!v.ok)
    throw VerifyError("decompose_truncated: similarity failed at " +
                      (v.witness ? v.witness->to_string() : std::string("?")));
  out.verified = true;
  out.verification = v.info;
  return out;
}

SignDecomposition decompose_polar_dim1(const RegulousTower& f, CadCache& cache,
                                       const DecompOptions& opt) {
  Variety X = f.domain();
  if (f.poldepth() == 0) {
    SignDecomposition out;
    out.method = "nbsign2_3";
    out.form = SignForm::of_polys(f.vars, X, {f.levels[0].p * f.levels[0].q});
    out.length_upper = 1;
    auto v = verify_decomposition(out.form, f, cache, opt);
    if (!v.ok) throw VerifyError("decompose_polar_dim1: regular case failed");
    out.verified = true;
    out.verification = v.info;
    return out;
  }
  const Variety& pol = f.levels[1].variety;
  {
    SASet pol_set = pol.as_saset();
    pol_set.vars = f.vars;
    if (f.vars.size() <= 2 && set_dimension(pol_set, cache) > 1)
      throw DomainError("decompose_polar_dim1: polar locus has dimension > 1");
  }
  auto closed = level_zero_set_closed(f, 1, cache);
  if (closed && *closed) {
    SignDecomposition out = decompose_truncated(f, cache, opt);
    out.method = "nbsign2_3";
    return out;
  }
  if (f.vars.size() > 2)
    throw DomainError("decompose_polar_dim1: 3-variable hard branch is out of reach");
  // Z(f) meets the polar curve one-dimensionally: collect the components Y
  // where the plain p*q representative cannot be used
  SASet zf = with_ambient(zero_set(f), X);
  SASet pol_set = with_ambient(pol.as_saset(), X);
  auto D = adapted_cad(set_and(zf, pol_set), cache);
  auto pol_cells = cells_of(*D, pol_set);
  auto zf_cells = cells_of(*D, zf);
  // component factors: vanishing basis polynomials of 1-dim polar cells
  std::vector<Polynomial> comp_factors;
  for (size_t c = 0; c < pol_cells.size(); ++c) {
    if (!pol_cells[c] || D->cells[c].dim != 1) continue;
    for (size_t b = 0; b < D->basis.size(); ++b)
      if (D->cells[c].basis_signs[b] == 0 &&
          std::find(comp_factors.begin(), comp_factors.end(), D->basis[b]) == comp_factors.end())
        comp_factors.push_back(D->basis[b]);
  }
  Variety Y = Variety::empty_set(f.vars);
  for (const auto& g : comp_factors) {
    // cells of this component
    size_t gid = 0;
    for (; gid < D->basis.size(); ++gid)
      if (D->basis[gid] == g) break;
    int zdim = -1;
    bool curve_part_in_zf = true;
    std::vector<char> comp_cells(D->cells.size(), 0);
    for (size_t c = 0; c < D->cells.size(); ++c) {
      if (!pol_cells[c] || D->cells[c].basis_signs[gid] != 0) continue;
      comp_cells[c] = 1;
      if (D->cells[c].dim == 1 && !zf_cells[c]) curve_part_in_zf = false;
      if (zf_cells[c]) zdim = std::max(zdim, D->cells[c].dim);
    }
    if (zdim <= 0 || !curve_part_in_zf) {
      // f is not identically zero on the one-dimensional part, so the plain
      // p*q representative cannot stand in for f here; the whole component
      // joins Y (a rational-factor proxy for the C-irreducible pieces)
      Y = variety_union(Y, Variety::of(f.vars, {g}));
      continue;
    }
    // otherwise only the isolated points of the component join Y
    std::vector<char> one_cells(D->cells.size(), 0);
    for (size_t c = 0; c < D->cells.size(); ++c)
      if (comp_cells[c] && D->cells[c].dim >= 1) one_cells[c] = 1;
    auto cl = D->closure_of(one_cells);
    for (size_t c = 0; c < D->cells.size(); ++c) {
      if (!comp_cells[c] || D->cells[c].dim != 0 || cl[c]) continue;
      std::vector<char> just(D->cells.size(), 0);
      just[c] = 1;
      Y = variety_union(Y, zariski_closure_cells(*D, just).variety);
    }
  }
  // isolated points of the polar locus itself
  {
    std::vector<char> pol_one(D->cells.size(), 0);
    for (size_t c = 0; c < D->cells.size(); ++c)
      if (pol_cells[c] && D->cells[c].dim >= 1) pol_one[c] = 1;
    auto cl = D->closure_of(pol_one);
    for (size_t c = 0; c < D->cells.size(); ++c) {
      if (!pol_cells[c] || D->cells[c].dim != 0 || cl[c]) continue;
      std::vector<char> just(D->cells.size(), 0);
      just[c] = 1;
      Y = variety_union(Y, zariski_closure_cells(*D, just).variety);
    }
  }
  // the tail data: h with sign(h) = sign(f) on Y, r with Z(r) = Y
  RegulousTower fY = restrict_tower(f, Y, cache);
  Length1Result tail = construct_length1(fY, cache, opt);
  if (!tail.representable)
    throw VerifyError("decompose_polar_dim1: Z(f) on Y is not Zariski closed");
  Polynomial r = sum_of_squares(Y);
  Polynomial pq = f.levels[0].p * f.levels[0].q;
  SignDecomposition out;
  out.method = "nbsign2_3";
  out.form = SignForm::of_polys(
      f.vars, X, {pq, tail.poly, -(r * r) * tail.poly});
  out.length_upper = 3;
  auto v = verify_decomposition(out.form, f, cache, opt);
  if (!v.ok)
    throw VerifyError("decompose_polar_dim1: similarity failed at " +
                      (v.witness ? v.witness->to_string() : std::string("?")));
  out.verified = true;
  out.verification = v.info;
  return out;
}

SignMatchResult sign_match_semialgebraic(const SASet& s_pos, const SASet& s_neg, const SASet& zero,
                                         const RegulousTower& g1, const RegulousTower& g2,
                                         const RegulousTower& g3, CadCache& cache,
                                         const DecompOptions& opt) {
  Variety X = g1.domain();
  // preconditions: the three pieces partition X and match the witnesses
  SASet whole = with_ambient(SASet::whole(g1.vars), X);
  SASet uni = set_or(set_or(s_pos, s_neg), zero);
  if (!sets_equal(uni, whole, cache))
    throw DomainError("sign_match: S_pos, S_neg, Z do not cover the variety");
  if (!set_empty(set_and(s_pos, s_neg), cache) || !set_empty(set_and(s_pos, zero), cache) ||
      !set_empty(set_and(s_neg, zero), cache))
    throw DomainError("sign_match: the three pieces overlap");
  if (!sets_equal(with_ambient(pos_set(g1), X), s_pos, cache))
    throw DomainError("sign_match: S_pos != S(g1)");
  if (!sets_equal(with_ambient(neg_set(g2), X), s_neg, cache))
    throw DomainError("sign_match: S_neg != S(-g2)");
  if (!sets_equal(with_ambient(zero_set(g3), X), zero, cache))
    throw DomainError("sign_match: Z != Z(g3)");
  // g = p * g1 g3^2 + h * g2 on Sbar = S_pos union Z
  RegulousTower g1g32 = tower_product(g1, tower_square(g3, cache), cache);
  SASet sbar = set_or(s_pos, zero);
  LojWitness4 w = loj_search_hl4(g1g32, g2, sbar, cache, opt.budget);
  SignMatchResult out;
  out.g = w.combined;
  out.witness = w;
  // full verification: sign(g) matches the prescribed data everywhere
  ConstructibleFn want = cfn_add(ConstructibleFn::indicator(s_pos, 1),
                                 ConstructibleFn::indicator(s_neg, -1));
  ConstructibleFn got = signature(SignForm::of_tower(out.g, X), cache);
  if (!cfn_equal(got, want, cache))
    throw VerifyError("sign_match: combined function failed the signature check");
  out.verified = true;
  return out;
}

LengthReport length_bound_report(const RegulousTower& f, CadCache& cache,
                                 const DecompOptions& opt) {
  LengthReport rep;
  Variety X = f.domain();
  SASet zf = with_ambient(zero_set(f), X);
  SASet xall = with_ambient(SASet::whole(f.vars), X);
  bool is_zero_fn = f.vars.size() <= 2 && sets_equal(zf, xall, cache);
  if (is_zero_fn) {
    rep.upper = 0;
    rep.lower = 0;
    rep.basis = {"zero function"};
    return rep;
  }
  // lower bound via the Zariski-closedness characterization
  std::optional<bool> closed;
  if (f.vars.size() <= 2) {
    closed = is_zariski_closed(zf, cache);
  } else {
    // sound slice test: a slice with a non-closed zero set rules length 1 out
    SliceSpec slices = opt.slices ? *opt.slices : SliceSpec::defaults(f.vars.back());
    bool some_failed = false;
    for (const auto& v : slices.values) {
      SASet s = zf;
      SASet red = reduce_saset(s, {{slices.axis, v}});
      if (red.vars.size() <= 2 && !is_zariski_closed(red, cache)) {
        some_failed = true;
        break;
      }
    }
    if (some_failed) closed = false;
  }
  if (closed.has_value()) {
    rep.lower = *closed ? 1 : 2;
    rep.basis.push_back(*closed ? "Z(f) Zariski closed: length 1 attainable"
                                : "Z(f) not Zariski closed: length >= 2");
  } else {
    rep.lower = 1;
    rep.basis.push_back("no exact closedness test available; trivial lower bound");
  }
  // upper bounds from the verified constructions
  rep.upper = 1 + 2 * f.poldepth();
  {
    auto d = decompose_nbsignpol(f, cache, opt);
    rep.basis.push_back("polar-sequence bound 1+2*poldepth = " + std::to_string(d.length_upper));
  }
  try {
    auto d = decompose_truncated(f, cache, opt);
    if (d.length_upper < rep.upper) rep.upper = d.length_upper;
    rep.basis.push_back("truncated bound 1+2t = " + std::to_string(d.length_upper));
  } catch (const std::exception&) {
    // no certified truncation level
  }
  if (closed.has_value() && *closed && f.vars.size() <= 2) {
    auto one = construct_length1(f, cache, opt);
    if (one.representable) {
      rep.upper = 1;
      rep.basis.push_back("single-polynomial representation found");
    }
  }
  if (rep.upper < rep.lower) rep.upper = rep.lower;
  return rep;
}

}  // namespace regulus
