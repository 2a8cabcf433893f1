#include "regulus/regulous.hpp"

#include <algorithm>
#include <sstream>

namespace regulus {

RegulousTower RegulousTower::from_poly(std::vector<std::string> vars, Variety on, Polynomial p) {
  RegulousTower t;
  t.vars = std::move(vars);
  t.levels.push_back({std::move(on), std::move(p), Polynomial::constant(1)});
  return t;
}

std::string RegulousTower::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i) os << " ";
    os << "level{[";
    for (size_t g = 0; g < levels[i].variety.gens.size(); ++g) {
      if (g) os << "; ";
      os << levels[i].variety.gens[g].to_string();
    }
    os << "]; " << levels[i].p.to_string() << "; " << levels[i].q.to_string() << "}";
  }
  return os.str();
}

nlohmann::json RegulousTower::to_json() const {
  nlohmann::json j;
  j["vars"] = vars;
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& l : levels) {
    nlohmann::json lj;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : l.variety.gens) gens.push_back(g.to_string());
    lj["variety"] = gens;
    lj["p"] = l.p.to_string();
    lj["q"] = l.q.to_string();
    ls.push_back(lj);
  }
  j["levels"] = ls;
  return j;
}

RegulousTower RegulousTower::from_json(const nlohmann::json& j) {
  RegulousTower t;
  for (const auto& v : j.at("vars")) t.vars.push_back(v.get<std::string>());
  for (const auto& lj : j.at("levels")) {
    TowerLevel l;
    std::vector<Polynomial> gens;
    for (const auto& g : lj.at("variety")) gens.push_back(parse_poly(g.get<std::string>()));
    l.variety = Variety::of(t.vars, std::move(gens));
    l.p = parse_poly(lj.at("p").get<std::string>());
    l.q = parse_poly(lj.at("q").get<std::string>());
    t.levels.push_back(std::move(l));
  }
  if (t.levels.empty()) throw ParseError("tower: no levels");
  return t;
}

SliceSpec SliceSpec::defaults(const std::string& axis) {
  SliceSpec s;
  s.axis = axis;
  for (const char* v : {"-2", "-1", "-1/2", "0", "1/2", "1", "2"}) s.values.push_back(parse_rational(v));
  return s;
}

// ----- sets -----

SASet stratum_set(const RegulousTower& f, size_t level) {
  SASet s = f.levels[level].variety.as_saset();
  s.vars = f.vars;
  if (level + 1 < f.levels.size()) {
    SASet next = f.levels[level + 1].variety.as_saset();
    next.vars = f.vars;
    s = set_and(s, set_not(next));
  }
  return s;
}

namespace {
SASet sign_set(const RegulousTower& f, Rel rel) {
  SASet acc = SASet::empty(f.vars);
  for (size_t i = 0; i < f.levels.size(); ++i) {
    SASet stratum = stratum_set(f, i);
    Polynomial pq = f.levels[i].p * f.levels[i].q;
    SASet cond = SASet::from_atom(f.vars, pq, rel);
    acc = set_or(acc, set_and(stratum, cond));
  }
  acc.ambient_variety = f.domain().gens;
  return acc;
}
}  // namespace

SASet zero_set(const RegulousTower& f) {
  SASet acc = SASet::empty(f.vars);
  for (size_t i = 0; i < f.levels.size(); ++i) {
    SASet stratum = stratum_set(f, i);
    SASet cond = SASet::from_atom(f.vars, f.levels[i].p, Rel::EQ);
    acc = set_or(acc, set_and(stratum, cond));
  }
  acc.ambient_variety = f.domain().gens;
  return acc;
}

SASet pos_set(const RegulousTower& f) { return sign_set(f, Rel::GT); }
SASet neg_set(const RegulousTower& f) { return sign_set(f, Rel::LT); }

// ----- evaluation -----

namespace {

bool on_variety(const Variety& v, Point& pt) {
  for (const auto& g : v.gens) {
    if (g.is_constant()) {
      if (sign_of(g.constant_value()) != 0) return false;
      continue;
    }
    if (sign_at_point(g, pt) != 0) return false;
  }
  return true;
}

// exact value of num/den at a point with algebraic coordinates
Coordinate algebraic_value(const Polynomial& num, const Polynomial& den, Point& pt) {
  // eliminate the algebraic coordinates from den*z - num
  std::string zvar = "zval_";
  Polynomial g = den * Polynomial::variable(zvar) - num;
  std::vector<std::pair<std::string, QInterval>> box;
  for (size_t i = 0; i < pt.vars.size(); ++i) {
    if (std::holds_alternative<Rational>(pt.coords[i])) {
      g = g.substitute(pt.vars[i], std::get<Rational>(pt.coords[i]));
    } else {
      AlgebraicNumber& a = std::get<AlgebraicNumber>(pt.coords[i]);
      if (a.is_rational()) {
        g = g.substitute(pt.vars[i], a.rat());
      } else {
        AlgebraicNumber ai = normalize_to_irreducible(a);
        g = resultant(g, ai.defining().to_poly(pt.vars[i]), pt.vars[i]);
        box.emplace_back(pt.vars[i], QInterval(ai.lo(), ai.hi()));
      }
    }
  }
  if (box.empty()) {
    // fully rational: g = den*z - num, linear in z
    UPoly u = UPoly::from_poly(g);
    if (u.degree() != 1) throw DomainError("algebraic_value: degenerate evaluation");
    return Rational(-u.c[0] / u.c[1]);
  }
  UPoly gz = UPoly::from_poly(g);
  std::vector<AlgebraicNumber> roots = real_roots(gz);
  if (roots.empty()) throw DomainError("algebraic_value: no candidate roots");
  // joint refinement until the value enclosure isolates a single candidate
  auto enclose_value = [&](Point& q) -> QInterval {
    std::vector<std::pair<std::string, QInterval>> bb;
    for (size_t i = 0; i < q.vars.size(); ++i) {
      if (std::holds_alternative<Rational>(q.coords[i]))
        bb.emplace_back(q.vars[i], QInterval::point(std::get<Rational>(q.coords[i])));
      else
        bb.emplace_back(q.vars[i], std::get<AlgebraicNumber>(q.coords[i]).enclosure());
    }
    return num.eval_interval(bb);
  };
  auto enclose_den = [&](Point& q) -> QInterval {
    std::vector<std::pair<std::string, QInterval>> bb;
    for (size_t i = 0; i < q.vars.size(); ++i) {
      if (std::holds_alternative<Rational>(q.coords[i]))
        bb.emplace_back(q.vars[i], QInterval::point(std::get<Rational>(q.coords[i])));
      else
        bb.emplace_back(q.vars[i], std::get<AlgebraicNumber>(q.coords[i]).enclosure());
    }
    return den.eval_interval(bb);
  };
  int guard = 0;
  while (true) {
    if (++guard > 400) throw DomainError("algebraic_value: did not converge");
    QInterval dv = enclose_den(pt);
    if (dv.contains_zero()) {
      for (auto& c : pt.coords)
        if (std::holds_alternative<AlgebraicNumber>(c)) std::get<AlgebraicNumber>(c).refine();
      continue;
    }
    QInterval nv = enclose_value(pt);
    // value interval = nv / dv
    Rational cands[4] = {nv.lo / dv.lo, nv.lo / dv.hi, nv.hi / dv.lo, nv.hi / dv.hi};
    Rational vlo = cands[0], vhi = cands[0];
    for (const auto& cq : cands) {
      if (cq < vlo) vlo = cq;
      if (cq > vhi) vhi = cq;
    }
    std::vector<size_t> hits;
    for (size_t r = 0; r < roots.size(); ++r)
      if (!(roots[r].hi() < vlo || roots[r].lo() > vhi)) hits.push_back(r);
    if (hits.size() == 1) {
      AlgebraicNumber v = roots[hits[0]];
      if (v.is_rational()) return v.rat();
      return v;
    }
    for (auto& c : pt.coords)
      if (std::holds_alternative<AlgebraicNumber>(c)) std::get<AlgebraicNumber>(c).refine();
    for (size_t r : hits) roots[r].refine();
  }
}

}  // namespace

EvalResult eval_tower(const RegulousTower& f, Point pt, CadCache& cache) {
  (void)cache;
  if (!on_variety(f.domain(), pt))
    throw DomainError("eval_tower: the point does not lie on the domain variety");
  for (size_t i = 0; i < f.levels.size(); ++i) {
    bool deeper = i + 1 < f.levels.size() && on_variety(f.levels[i + 1].variety, pt);
    if (deeper) continue;
    // point is in X_i minus X_{i+1}
    if (sign_at_point(f.levels[i].q, pt) == 0)
      throw DomainError("eval_tower: q vanishes outside the next level (malformed tower)");
    EvalResult r;
    r.level_used = (int)i;
    if (pt.all_rational()) {
      std::vector<std::pair<std::string, Rational>> at;
      for (size_t k = 0; k < pt.vars.size(); ++k)
        at.emplace_back(pt.vars[k], std::holds_alternative<Rational>(pt.coords[k])
                                        ? std::get<Rational>(pt.coords[k])
                                        : std::get<AlgebraicNumber>(pt.coords[k]).rat());
      r.value = f.levels[i].p.eval(at) / f.levels[i].q.eval(at);
      return r;
    }
    r.value = algebraic_value(f.levels[i].p, f.levels[i].q, pt);
    return r;
  }
  throw DomainError("eval_tower: unreachable");
}

int tower_sign_at(const RegulousTower& f, Point& pt) {
  for (size_t i = 0; i < f.levels.size(); ++i) {
    bool deeper = i + 1 < f.levels.size() && on_variety(f.levels[i + 1].variety, pt);
    if (deeper) continue;
    int sp = sign_at_point(f.levels[i].p, pt);
    int sq = sign_at_point(f.levels[i].q, pt);
    if (sq == 0) throw DomainError("tower_sign_at: q vanishes on its stratum");
    return sp * sq;
  }
  throw DomainError("tower_sign_at: point below the deepest level");
}

// ----- validation -----

namespace {

// 2-variable exact checks on one ambient context
void validate_2d(const RegulousTower& f, CadCache& cache, TowerCheck& out) {
  for (size_t i = 0; i < f.levels.size(); ++i) {
    const TowerLevel& L = f.levels[i];
    SASet xi = L.variety.as_saset();
    xi.vars = f.vars;
    int dim_i = set_dimension(xi, cache);
    if (i == 0 && !L.variety.is_whole() && dim_i < 0)
      out.warnings.push_back("level 0 variety is empty");
    // Z(q_i) cut with X_i must be the next level
    SASet zq = set_and(xi, SASet::from_atom(f.vars, L.q, Rel::EQ));
    if (i + 1 < f.levels.size()) {
      SASet nxt = f.levels[i + 1].variety.as_saset();
      nxt.vars = f.vars;
      if (!sets_equal(zq, set_and(xi, nxt), cache)) {
        out.ok = false;
        out.errors.push_back("level " + std::to_string(i) +
                             ": Z(q) on the level variety differs from the next level");
      }
      int dim_next = set_dimension(set_and(xi, nxt), cache);
      if (!(dim_next < dim_i)) {
        out.ok = false;
        out.errors.push_back("level " + std::to_string(i + 1) +
                             ": dimension does not strictly decrease");
      }
    } else {
      if (!set_empty(zq, cache)) {
        out.ok = false;
        out.errors.push_back("last level: q vanishes somewhere on the variety");
      }
    }
  }
  // polar-locus codimension lint (Prop. on normal varieties): pol(f) should
  // have codimension >= 2 in smooth ambient pieces; warn only
  if (f.levels.size() >= 2) {
    SASet x0 = f.domain().as_saset();
    x0.vars = f.vars;
    SASet x1 = f.levels[1].variety.as_saset();
    x1.vars = f.vars;
    int d0 = f.domain().is_whole() ? (int)f.vars.size() : set_dimension(x0, cache);
    int d1 = set_dimension(x1, cache);
    if (d1 >= 0 && d0 - d1 < 2)
      out.warnings.push_back("polar locus has codimension " + std::to_string(d0 - d1) +
                             " < 2; genuine regulous input should not do this");
  }
}

}  // namespace

TowerCheck validate_tower(const RegulousTower& f, CadCache& cache, const SliceSpec* slices) {
  TowerCheck out;
  if (f.levels.empty()) {
    out.ok = false;
    out.errors.push_back("tower has no levels");
    return out;
  }
  if (f.vars.size() <= 2) {
    validate_2d(f, cache, out);
    return out;
  }
  if (f.vars.size() != 3) {
    out.ok = false;
    out.errors.push_back("towers supported in at most 3 variables");
    return out;
  }
  SliceSpec def = SliceSpec::defaults(f.vars.back());
  const SliceSpec& sl = slices ? *slices : def;
  for (const auto& v : sl.values) {
    RegulousTower g;
    g.vars.clear();
    for (const auto& var : f.vars)
      if (var != sl.axis) g.vars.push_back(var);
    bool degenerate = false;
    for (const auto& L : f.levels) {
      TowerLevel nl;
      std::vector<Polynomial> gens;
      for (const auto& gen : L.variety.gens) {
        Polynomial s = gen.substitute(sl.axis, v);
        if (s.is_constant() && sign_of(s.constant_value()) != 0) {
          // this level's slice is empty; truncate the tower here
          degenerate = true;
          break;
        }
        gens.push_back(s);
      }
      if (degenerate) break;
      nl.variety = Variety::of(g.vars, gens);
      nl.p = L.p.substitute(sl.axis, v);
      nl.q = L.q.substitute(sl.axis, v);
      g.levels.push_back(std::move(nl));
    }
    if (g.levels.empty()) continue;
    // slice strata can collapse; drop trailing levels equal to their parent
    TowerCheck part;
    validate_2d(g, cache, part);
    for (const auto& e : part.errors)
      out.errors.push_back("slice " + sl.axis + "=" + rat_str(v) + ": " + e);
    for (const auto& w : part.warnings)
      out.warnings.push_back("slice " + sl.axis + "=" + rat_str(v) + ": " + w);
    if (!part.ok) out.ok = false;
  }
  out.warnings.push_back("3-variable tower: invariants verified on slices only");
  return out;
}

// ----- restriction and ring operations -----

RegulousTower restrict_tower(const RegulousTower& f, const Variety& v, CadCache& cache) {
  // v must sit inside the domain: every domain generator vanishes on v
  if (f.vars.size() <= 2) {
    SASet vs = v.as_saset();
    vs.vars = f.vars;
    for (const auto& g : f.domain().gens) {
      SASet nz = set_and(vs, SASet::from_atom(f.vars, g, Rel::NE));
      if (!set_empty(nz, cache))
        throw DomainError("restrict_tower: the subvariety is not contained in the domain");
    }
  }
  RegulousTower out;
  out.vars = f.vars;
  for (size_t i = 0; i < f.levels.size(); ++i) {
    std::vector<Polynomial> gens = f.levels[i].variety.gens;
    for (const auto& g : v.gens) gens.push_back(g);
    TowerLevel nl{Variety::of(f.vars, gens), f.levels[i].p, f.levels[i].q};
    out.levels.push_back(std::move(nl));
  }
  // drop levels whose stratum is empty (2-var exact; deeper handled by caller)
  if (f.vars.size() <= 2) {
    RegulousTower pruned;
    pruned.vars = out.vars;
    for (size_t i = 0; i < out.levels.size(); ++i) {
      RegulousTower probe;
      probe.vars = out.vars;
      probe.levels.assign(out.levels.begin() + (long)i, out.levels.end());
      SASet stratum = stratum_set(probe, 0);
      if (i + 1 == out.levels.size()) {
        SASet whole = probe.levels[0].variety.as_saset();
        whole.vars = out.vars;
        stratum = whole;
      }
      if (!set_empty(stratum, cache)) pruned.levels.push_back(out.levels[i]);
    }
    if (pruned.levels.empty()) throw DomainError("restrict_tower: restriction is empty");
    // collapse consecutive levels with identical varieties
    RegulousTower dedup;
    dedup.vars = pruned.vars;
    for (auto& l : pruned.levels) {
      if (!dedup.levels.empty() && dedup.levels.back().variety.gens == l.variety.gens) continue;
      dedup.levels.push_back(l);
    }
    return dedup;
  }
  // 3 variables: prune through a coordinate-pinned reduction when available
  if (auto pins = axis_pins(out.levels.front().variety)) {
    if (pins->pins.size() >= 1) {
      RegulousTower red = reduce_tower(out, *pins);
      if (red.vars.size() <= 2) {
        RegulousTower red_pruned;
        red_pruned.vars = red.vars;
        std::vector<size_t> kept;
        for (size_t i = 0; i < red.levels.size(); ++i) {
          RegulousTower probe;
          probe.vars = red.vars;
          probe.levels.assign(red.levels.begin() + (long)i, red.levels.end());
          SASet stratum = stratum_set(probe, 0);
          if (!set_empty(stratum, cache)) kept.push_back(i);
        }
        if (kept.empty()) throw DomainError("restrict_tower: restriction is empty");
        RegulousTower res;
        res.vars = out.vars;
        for (size_t i : kept) res.levels.push_back(out.levels[i]);
        return res;
      }
    }
  }
  return out;
}

RegulousTower tower_negate(const RegulousTower& f) {
  RegulousTower out = f;
  for (auto& l : out.levels) l.p = -l.p;
  return out;
}

RegulousTower tower_scale(const RegulousTower& f, const Polynomial& c) {
  RegulousTower out = f;
  for (auto& l : out.levels) l.p = l.p * c;
  return out;
}

namespace {

// Shared recursion for sum/product: combine level 0 by the rational-function
// rule and recurse on the union of the polar loci.
RegulousTower tower_combine(const RegulousTower& a, const RegulousTower& b, bool product,
                            CadCache& cache, int depth) {
  if (depth > 8) throw DomainError("tower_combine: recursion depth exceeded");
  if (a.domain().gens != b.domain().gens)
    throw DomainError("tower_combine: towers live on different varieties");
  const TowerLevel& la = a.levels.front();
  const TowerLevel& lb = b.levels.front();
  Polynomial p = product ? la.p * lb.p : la.p * lb.q + lb.p * la.q;
  Polynomial q = la.q * lb.q;
  RegulousTower out;
  out.vars = merge_vars(a.vars, b.vars);
  bool a_deeper = a.levels.size() > 1;
  bool b_deeper = b.levels.size() > 1;
  // next level: Z(q) on the domain = union of the two next levels
  if (!a_deeper && !b_deeper) {
    out.levels.push_back({a.domain(), p, q});
    return out;
  }
  Variety na = a_deeper ? a.levels[1].variety : Variety::empty_set(a.vars);
  Variety nb = b_deeper ? b.levels[1].variety : Variety::empty_set(b.vars);
  Variety w = variety_union(na, nb);
  RegulousTower ra = restrict_tower(a, w, cache);
  RegulousTower rb = restrict_tower(b, w, cache);
  RegulousTower deeper = tower_combine(ra, rb, product, cache, depth + 1);
  out.levels.push_back({a.domain(), p, q});
  for (auto& l : deeper.levels) out.levels.push_back(l);
  return out;
}

}  // namespace

RegulousTower tower_product(const RegulousTower& a, const RegulousTower& b, CadCache& cache) {
  return tower_combine(a, b, true, cache, 0);
}

RegulousTower tower_sum(const RegulousTower& a, const RegulousTower& b, CadCache& cache) {
  return tower_combine(a, b, false, cache, 0);
}

RegulousTower tower_square(const RegulousTower& f, CadCache& cache) {
  return tower_product(f, f, cache);
}

// ----- coordinate pins -----

std::optional<AxisPins> axis_pins(const Variety& v) {
  AxisPins out;
  for (const auto& g : v.gens) {
    bool pinned = false;
    if (g.vars().size() == 1 && g.degree_in(g.vars()[0]) == 1) {
      UPoly u = UPoly::from_poly(g);
      Rational c = -u.c[0] / u.c[1];
      out.pins.emplace_back(g.vars()[0], c);
      pinned = true;
    }
    if (!pinned) out.residual_gens.push_back(g);
  }
  if (out.pins.empty()) return std::nullopt;
  return out;
}

RegulousTower reduce_tower(const RegulousTower& f, const AxisPins& pins) {
  RegulousTower out;
  for (const auto& v : f.vars) {
    bool gone = false;
    for (const auto& [pv, c] : pins.pins)
      if (pv == v) gone = true;
    if (!gone) out.vars.push_back(v);
  }
  for (const auto& l : f.levels) {
    TowerLevel nl;
    std::vector<Polynomial> gens;
    for (const auto& g : l.variety.gens) {
      Polynomial s = g;
      for (const auto& [pv, c] : pins.pins) s = s.substitute(pv, c);
      if (s.is_zero()) continue;
      if (s.is_constant()) throw DomainError("reduce_tower: pins make a level empty");
      gens.push_back(s);
    }
    nl.variety = Variety::of(out.vars, gens);
    nl.p = l.p;
    nl.q = l.q;
    for (const auto& [pv, c] : pins.pins) {
      nl.p = nl.p.substitute(pv, c);
      nl.q = nl.q.substitute(pv, c);
    }
    out.levels.push_back(std::move(nl));
  }
  return out;
}

Polynomial unreduce(const Polynomial& p) { return p; }

// ----- continuity audit -----

AuditReport continuity_audit(const RegulousTower& f, CadCache& cache,
                             const std::vector<std::pair<Rational, Rational>>& box, int density,
                             const Rational& tol, unsigned seed) {
  AuditReport rep;
  if (f.vars.size() > 2) {
    rep.note = "3-variable tower: audit each slice separately";
    return rep;
  }
  if (f.levels.size() < 2) {
    rep.note = "polynomial level only; nothing to audit";
    return rep;
  }
  (void)seed;
  for (size_t i = 0; i + 1 < f.levels.size(); ++i) {
    // rational points of the deeper level inside the box
    SASet deeper = f.levels[i + 1].variety.as_saset();
    deeper.vars = f.vars;
    auto D = adapted_cad(deeper, cache);
    auto sel = cells_of(*D, deeper);
    for (size_t c = 0; c < sel.size(); ++c) {
      if (!sel[c]) continue;
      const Point& sp = D->cells[c].sample;
      if (!sp.all_rational()) continue;
      std::vector<Rational> w;
      bool inside = true;
      for (size_t k = 0; k < sp.coords.size(); ++k) {
        Rational v = std::holds_alternative<Rational>(sp.coords[k])
                         ? std::get<Rational>(sp.coords[k])
                         : std::get<AlgebraicNumber>(sp.coords[k]).rat();
        if (k < box.size() && (v < box[k].first || v > box[k].second)) inside = false;
        w.push_back(v);
      }
      if (!inside) continue;
      Point wp = Point::rational(f.vars, w);
      EvalResult at_w = eval_tower(f, wp, cache);
      if (!std::holds_alternative<Rational>(at_w.value)) continue;
      Rational fw = std::get<Rational>(at_w.value);
      // approach along points of the enclosing stratum; on a full-dimensional
      // level-0 this is a straight rational segment, otherwise walk the cells
      AuditPair pair;
      pair.target = wp;
      if (f.levels[i].variety.is_whole()) {
        Rational dx(1, 3), dy(1, 7);
        for (int step = 1; step <= std::max(3, density); ++step) {
          std::vector<Rational> xk = w;
          Rational scale = Rational(1) / Rational(1 << step);
          xk[0] += dx * scale;
          if (xk.size() > 1) xk[1] += dy * scale;
          Point pk = Point::rational(f.vars, xk);
          // stay on the stratum: level i is everything, skip deeper points
          if (on_variety(f.levels[i + 1].variety, pk)) continue;
          std::vector<std::pair<std::string, Rational>> at;
          for (size_t k = 0; k < f.vars.size(); ++k) at.emplace_back(f.vars[k], xk[k]);
          Rational qv = f.levels[i].q.eval(at);
          if (sign_of(qv) == 0) continue;
          Rational val = f.levels[i].p.eval(at) / qv;
          pair.gaps.push_back(rat_abs(val - fw));
        }
      } else {
        // curve stratum: walk adjacent cells toward the target geometrically
        SASet xi = f.levels[i].variety.as_saset();
        xi.vars = f.vars;
        auto DX = adapted_cad(xi, cache);
        int target_cell = DX->locate(w);
        const CadCell& tc = DX->cells[(size_t)target_cell];
        auto xsel = cells_of(*DX, xi);
        int steps = std::max(3, density);
        auto eval_gap = [&](Point& pc) {
          if (on_variety(f.levels[i + 1].variety, pc)) return;
          if (sign_at_point(f.levels[i].q, pc) == 0) return;
          Coordinate val = algebraic_value(f.levels[i].p, f.levels[i].q, pc);
          QInterval enc = std::holds_alternative<Rational>(val)
                              ? QInterval::point(std::get<Rational>(val))
                              : std::get<AlgebraicNumber>(val).enclosure();
          Rational gap = std::max(rat_abs(enc.lo - fw), rat_abs(enc.hi - fw));
          pair.gaps.push_back(gap);
        };
        for (size_t o = 0; o < DX->cells.size(); ++o) {
          if (!xsel[o] || DX->cells[o].dim != 1) continue;
          bool adjacent = false;
          for (int cl : DX->closure[o])
            if (cl == target_cell) adjacent = true;
          if (!adjacent) continue;
          const CadCell& oc = DX->cells[o];
          if (oc.base_index == tc.base_index + 1 || oc.base_index + 1 == tc.base_index) {
            // horizontal approach: shrink the vertex enclosure
            int side = oc.base_index > tc.base_index ? +1 : -1;
            AlgebraicNumber vx = DX->base_roots[(size_t)tc.base_index / 2];
            for (int k = 0; k < steps; ++k) {
              vx.refine();
              vx.refine();
              Rational xk = side > 0 ? vx.hi() : vx.lo();
              auto roots = DX->fiber_roots_at(xk);
              if (oc.stack_index % 2 != 1) break;
              size_t ri = (size_t)oc.stack_index / 2;
              if (ri >= roots.size()) break;
              Point pc;
              pc.vars = f.vars;
              pc.coords.emplace_back(xk);
              pc.coords.emplace_back(roots[ri]);
              eval_gap(pc);
            }
          } else if (oc.base_index == tc.base_index &&
                     (oc.stack_index == tc.stack_index + 1 || oc.stack_index + 1 == tc.stack_index)) {
            // vertical approach within the same stack
            int side = oc.stack_index > tc.stack_index ? +1 : -1;
            if (!std::holds_alternative<AlgebraicNumber>(tc.sample.coords[1])) continue;
            AlgebraicNumber vy = std::get<AlgebraicNumber>(tc.sample.coords[1]);
            for (int k = 0; k < steps; ++k) {
              vy.refine();
              vy.refine();
              Rational yk = side > 0 ? vy.hi() : vy.lo();
              Point pc;
              pc.vars = f.vars;
              pc.coords.push_back(tc.sample.coords[0]);
              pc.coords.emplace_back(yk);
              eval_gap(pc);
            }
          }
        }
      }
      if (pair.gaps.empty()) continue;
      Rational best = pair.gaps[0];
      for (const auto& g : pair.gaps)
        if (g < best) best = g;
      pair.pass = best <= tol;
      if (!pair.pass) rep.pass = false;
      rep.pairs.push_back(std::move(pair));
    }
  }
  if (rep.pairs.empty()) rep.note = "no rational target points sampled; vacuous pass";
  return rep;
}

}  // namespace regulus
