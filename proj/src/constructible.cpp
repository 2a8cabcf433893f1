#include "regulus/constructible.hpp"

#include <algorithm>

namespace regulus {

ConstructibleFn ConstructibleFn::zero(std::vector<std::string> vars) {
  ConstructibleFn f;
  f.vars = std::move(vars);
  return f;
}

ConstructibleFn ConstructibleFn::indicator(SASet s, long m) {
  ConstructibleFn f;
  f.vars = s.vars;
  if (m != 0) f.terms.push_back({m, std::move(s)});
  return f;
}

std::vector<Polynomial> ConstructibleFn::all_polys() const {
  std::vector<Polynomial> out;
  for (const auto& t : terms)
    for (const auto& p : t.set.all_polys())
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

long ConstructibleFn::value_at(Point& pt) const {
  long v = 0;
  for (const auto& t : terms)
    if (member(t.set, pt)) v += t.m;
  return v;
}

std::string ConstructibleFn::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += std::to_string(terms[i].m) + "*1{" + terms[i].set.to_string() + "}";
  }
  return s;
}

nlohmann::json ConstructibleFn::to_json() const {
  nlohmann::json j;
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json tj;
    tj["m"] = t.m;
    tj["set"] = t.set.to_json();
    ts.push_back(tj);
  }
  j["terms"] = ts;
  return j;
}

ConstructibleFn cfn_add(const ConstructibleFn& a, const ConstructibleFn& b) {
  ConstructibleFn out;
  out.vars = merge_vars(a.vars, b.vars);
  out.terms = a.terms;
  for (const auto& t : b.terms) out.terms.push_back(t);
  return out;
}

ConstructibleFn cfn_scale(const ConstructibleFn& a, long k) {
  ConstructibleFn out;
  out.vars = a.vars;
  if (k == 0) return out;
  out.terms = a.terms;
  for (auto& t : out.terms) t.m *= k;
  return out;
}

ConstructibleFn cfn_mul(const ConstructibleFn& a, const ConstructibleFn& b) {
  ConstructibleFn out;
  out.vars = merge_vars(a.vars, b.vars);
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      long m = ta.m * tb.m;
      if (m == 0) continue;
      out.terms.push_back({m, set_and(ta.set, tb.set)});
    }
  return out;
}

std::vector<long> cfn_cell_values(const ConstructibleFn& phi, const Decomposition& D) {
  std::vector<long> vals(D.cells.size(), 0);
  for (const auto& t : phi.terms) {
    SASet s = t.set;
    s.vars = D.vars;
    auto sel = cells_of(D, s);
    for (size_t c = 0; c < vals.size(); ++c)
      if (sel[c]) vals[c] += t.m;
  }
  return vals;
}

CfnCompare cfn_compare(const ConstructibleFn& a, const ConstructibleFn& b, CadCache& cache) {
  std::vector<std::string> vars = merge_vars(a.vars, b.vars);
  std::vector<Polynomial> polys = a.all_polys();
  for (const auto& p : b.all_polys())
    if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(p);
  if (vars.empty()) vars = {"x"};
  auto D = decompose(polys, vars, cache);
  auto va = cfn_cell_values(a, *D);
  auto vb = cfn_cell_values(b, *D);
  CfnCompare rep;
  for (size_t c = 0; c < va.size(); ++c) {
    if (va[c] != vb[c]) {
      rep.equal = false;
      rep.witness = D->cells[c].sample;
      return rep;
    }
  }
  return rep;
}

nlohmann::json EulerReport::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["cells_used"] = cells_used;
  return j;
}

EulerReport euler_integral(const ConstructibleFn& phi, CadCache& cache) {
  if (phi.vars.size() > 2) throw DomainError("euler_integral: ambient dimension > 2");
  EulerReport rep;
  if (phi.terms.empty()) return rep;
  auto D = decompose(phi.all_polys(), phi.vars, cache);
  auto vals = cfn_cell_values(phi, *D);
  for (size_t c = 0; c < vals.size(); ++c) {
    if (vals[c] == 0) continue;
    ++rep.cells_used;
    rep.value += vals[c] * ((D->cells[c].dim % 2 == 0) ? 1 : -1);
  }
  return rep;
}

ConstructibleFn pushforward(const ConstructibleFn& phi, const std::string& axis, CadCache& cache) {
  if (phi.vars.size() != 2) throw DomainError("pushforward: expected a function on R^2");
  if (std::find(phi.vars.begin(), phi.vars.end(), axis) == phi.vars.end())
    throw DomainError("pushforward: axis " + axis + " is not an ambient variable");
  std::string fiber = phi.vars[0] == axis ? phi.vars[1] : phi.vars[0];
  // cylindrical structure with the retained variable as the base
  auto D = decompose(phi.all_polys(), {axis, fiber}, cache, /*thom=*/true);
  auto vals = cfn_cell_values(phi, *D);
  ConstructibleFn out;
  out.vars = {axis};
  auto sign_to_rel = [](int s) { return s < 0 ? Rel::LT : (s == 0 ? Rel::EQ : Rel::GT); };
  for (int b = 0; b < D->base_cell_count(); ++b) {
    long fiber_chi = 0;
    int off = D->stack_offset[(size_t)b];
    int r = D->stack_sections[(size_t)b];
    for (int s = 0; s < 2 * r + 1; ++s) {
      long v = vals[(size_t)(off + s)];
      if (v == 0) continue;
      fiber_chi += (s % 2 == 0) ? -v : v;  // sectors are open fiber intervals
    }
    if (fiber_chi == 0) continue;
    // describe the base cell by its Thom sign conditions
    std::vector<SAFormulaPtr> conds;
    const CadCell& probe = D->cells[(size_t)off];
    for (size_t i = 0; i < D->thom_base.size(); ++i)
      conds.push_back(SAFormula::atom(D->thom_base[i], sign_to_rel(probe.thom_base_signs[i])));
    SASet cell_set;
    cell_set.vars = {axis};
    cell_set.formula = SAFormula::conj(std::move(conds));
    out.terms.push_back({fiber_chi, std::move(cell_set)});
  }
  return out;
}

ConstructibleFn StronglyACCertificate::as_cfn(const std::vector<std::string>& vars) const {
  ConstructibleFn out = ConstructibleFn::zero(vars);
  for (const auto& [m, v] : terms) {
    SASet s = v.as_saset();
    s.vars = vars;
    out.terms.push_back({m, std::move(s)});
  }
  return out;
}

nlohmann::json StronglyACCertificate::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [m, v] : terms) {
    nlohmann::json t;
    t["m"] = m;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : v.gens) gens.push_back(g.to_string());
    t["variety"] = gens;
    j.push_back(t);
  }
  return j;
}

StronglyACCertificate strongly_ac_decompose(const RegulousTower& f, CadCache& cache) {
  if (f.vars.size() > 2)
    throw DomainError("strongly_ac_decompose: slice 3-variable towers first");
  StronglyACCertificate cert;
  for (size_t i = 0; i < f.levels.size(); ++i) {
    const TowerLevel& L = f.levels[i];
    // Z_i = Z(p_i) cut with X_i; the stratum contribution is 1_{Z_i} - 1_{Z_i
    // cut with X_{i+1}}
    std::vector<Polynomial> zgens = L.variety.gens;
    if (L.p.is_zero()) {
      // f vanishes on the whole stratum
    } else if (L.p.is_constant()) {
      continue;  // never zero on the stratum
    } else {
      zgens.push_back(L.p);
    }
    Variety zi = Variety::of(f.vars, zgens);
    cert.terms.emplace_back(1, zi);
    if (i + 1 < f.levels.size()) {
      std::vector<Polynomial> cut = zgens;
      for (const auto& g : f.levels[i + 1].variety.gens) cut.push_back(g);
      cert.terms.emplace_back(-1, Variety::of(f.vars, cut));
    }
  }
  // hard verification at construction
  ConstructibleFn claimed = cert.as_cfn(f.vars);
  ConstructibleFn target = ConstructibleFn::indicator(zero_set(f));
  auto rep = cfn_compare(claimed, target, cache);
  if (!rep.equal)
    throw VerifyError("strongly_ac_decompose: certificate failed at " +
                      (rep.witness ? rep.witness->to_string() : std::string("?")));
  return cert;
}

}  // namespace regulus
