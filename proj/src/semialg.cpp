#include "regulus/semialg.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace regulus {

bool rel_holds(Rel r, int sign) {
  switch (r) {
    case Rel::LT: return sign < 0;
    case Rel::LE: return sign <= 0;
    case Rel::EQ: return sign == 0;
    case Rel::NE: return sign != 0;
    case Rel::GT: return sign > 0;
    case Rel::GE: return sign >= 0;
  }
  return false;
}

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::LT: return "<";
    case Rel::LE: return "<=";
    case Rel::EQ: return "=";
    case Rel::NE: return "!=";
    case Rel::GT: return ">";
    case Rel::GE: return ">=";
  }
  return "?";
}

SAFormulaPtr SAFormula::make_true() {
  auto f = std::make_shared<SAFormula>();
  f->kind = kTrue;
  return f;
}

SAFormulaPtr SAFormula::make_false() {
  auto f = std::make_shared<SAFormula>();
  f->kind = kFalse;
  return f;
}

SAFormulaPtr SAFormula::atom(Polynomial p, Rel r) {
  if (p.is_constant()) {
    return rel_holds(r, sign_of(p.constant_value())) ? make_true() : make_false();
  }
  auto f = std::make_shared<SAFormula>();
  f->kind = kAtom;
  f->poly = std::move(p);
  f->rel = r;
  return f;
}

SAFormulaPtr SAFormula::conj(std::vector<SAFormulaPtr> cs) {
  std::vector<SAFormulaPtr> kept;
  for (auto& c : cs) {
    if (c->kind == kFalse) return make_false();
    if (c->kind == kTrue) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return make_true();
  if (kept.size() == 1) return kept[0];
  auto f = std::make_shared<SAFormula>();
  f->kind = kAnd;
  f->children = std::move(kept);
  return f;
}

SAFormulaPtr SAFormula::disj(std::vector<SAFormulaPtr> cs) {
  std::vector<SAFormulaPtr> kept;
  for (auto& c : cs) {
    if (c->kind == kTrue) return make_true();
    if (c->kind == kFalse) continue;
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return make_false();
  if (kept.size() == 1) return kept[0];
  auto f = std::make_shared<SAFormula>();
  f->kind = kOr;
  f->children = std::move(kept);
  return f;
}

SAFormulaPtr SAFormula::negate(SAFormulaPtr c) {
  if (c->kind == kTrue) return make_false();
  if (c->kind == kFalse) return make_true();
  auto f = std::make_shared<SAFormula>();
  f->kind = kNot;
  f->children = {std::move(c)};
  return f;
}

bool SAFormula::eval(const std::function<int(const Polynomial&)>& sign_fn) const {
  switch (kind) {
    case kTrue: return true;
    case kFalse: return false;
    case kAtom: return rel_holds(rel, sign_fn(poly));
    case kAnd:
      for (const auto& c : children)
        if (!c->eval(sign_fn)) return false;
      return true;
    case kOr:
      for (const auto& c : children)
        if (c->eval(sign_fn)) return true;
      return false;
    case kNot: return !children[0]->eval(sign_fn);
  }
  return false;
}

void SAFormula::collect_polys(std::vector<Polynomial>& out) const {
  if (kind == kAtom) {
    if (std::find(out.begin(), out.end(), poly) == out.end()) out.push_back(poly);
    return;
  }
  for (const auto& c : children) c->collect_polys(out);
}

std::string SAFormula::to_string() const {
  switch (kind) {
    case kTrue: return "true";
    case kFalse: return "false";
    case kAtom: return poly.to_string() + " " + rel_str(rel) + " 0";
    case kNot: return "not (" + children[0]->to_string() + ")";
    case kAnd:
    case kOr: {
      std::string op = kind == kAnd ? " and " : " or ";
      std::string s;
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) s += op;
        s += "(" + children[i]->to_string() + ")";
      }
      return s;
    }
  }
  return "?";
}

nlohmann::json SAFormula::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case kTrue: j["kind"] = "true"; break;
    case kFalse: j["kind"] = "false"; break;
    case kAtom:
      j["kind"] = "atom";
      j["poly"] = poly.to_string();
      j["rel"] = rel_str(rel);
      break;
    case kAnd:
    case kOr:
    case kNot: {
      j["kind"] = kind == kAnd ? "and" : (kind == kOr ? "or" : "not");
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : children) cs.push_back(c->to_json());
      j["children"] = cs;
      break;
    }
  }
  return j;
}

SASet SASet::whole(std::vector<std::string> vars) {
  return {std::move(vars), SAFormula::make_true(), {}};
}

SASet SASet::empty(std::vector<std::string> vars) {
  return {std::move(vars), SAFormula::make_false(), {}};
}

SASet SASet::from_atom(std::vector<std::string> vars, Polynomial p, Rel r) {
  return {std::move(vars), SAFormula::atom(std::move(p), r), {}};
}

std::vector<Polynomial> SASet::all_polys() const {
  std::vector<Polynomial> out;
  formula->collect_polys(out);
  for (const auto& g : ambient_variety)
    if (!g.is_constant() && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::string SASet::to_string() const {
  std::string s = formula->to_string();
  if (!ambient_variety.empty()) {
    s = "(" + s + ") on [";
    for (size_t i = 0; i < ambient_variety.size(); ++i) {
      if (i) s += "; ";
      s += ambient_variety[i].to_string();
    }
    s += "]";
  }
  return s;
}

nlohmann::json SASet::to_json() const {
  nlohmann::json j;
  j["vars"] = vars;
  j["formula"] = formula->to_json();
  nlohmann::json av = nlohmann::json::array();
  for (const auto& g : ambient_variety) av.push_back(g.to_string());
  j["ambient_variety"] = av;
  return j;
}

namespace {
std::vector<std::string> merged_vars(const SASet& a, const SASet& b) {
  return merge_vars(a.vars, b.vars);
}
std::vector<Polynomial> merged_ambient(const SASet& a, const SASet& b) {
  std::vector<Polynomial> gens = a.ambient_variety;
  for (const auto& g : b.ambient_variety)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  return gens;
}
}  // namespace

SASet set_and(const SASet& a, const SASet& b) {
  return {merged_vars(a, b), SAFormula::conj({a.formula, b.formula}), merged_ambient(a, b)};
}

SASet set_or(const SASet& a, const SASet& b) {
  if (a.ambient_variety != b.ambient_variety)
    throw DomainError("set_or: ambient varieties differ; intersect with the variety explicitly");
  return {merged_vars(a, b), SAFormula::disj({a.formula, b.formula}), a.ambient_variety};
}

SASet set_not(const SASet& a) {
  return {a.vars, SAFormula::negate(a.formula), a.ambient_variety};
}

// ----- parser -----

namespace {

struct SetParser {
  const std::string& s;
  size_t i = 0;

  explicit SetParser(const std::string& text) : s(text) {}
  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool word(const char* w) {
    skip_ws();
    size_t n = strlen(w);
    if (s.compare(i, n, w) != 0) return false;
    size_t end = i + n;
    if (end < s.size() && (std::isalnum((unsigned char)s[end]) || s[end] == '_')) return false;
    i = end;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("set parse error at position " + std::to_string(i) + ": " + msg + " in \"" +
                     s + "\"");
  }

  SAFormulaPtr parse_or() {
    std::vector<SAFormulaPtr> cs = {parse_and()};
    while (word("or")) cs.push_back(parse_and());
    return SAFormula::disj(std::move(cs));
  }
  SAFormulaPtr parse_and() {
    std::vector<SAFormulaPtr> cs = {parse_unary()};
    while (word("and")) cs.push_back(parse_unary());
    return SAFormula::conj(std::move(cs));
  }
  SAFormulaPtr parse_unary() {
    skip_ws();
    if (word("not")) return SAFormula::negate(parse_unary());
    if (word("true")) return SAFormula::make_true();
    if (word("false")) return SAFormula::make_false();
    if (i < s.size() && s[i] == '(') {
      // Either a grouped formula or a parenthesized polynomial atom: scan for
      // a comparison at depth zero after the group.
      size_t save = i;
      ++i;
      SAFormulaPtr f;
      try {
        f = parse_or();
        skip_ws();
        if (i < s.size() && s[i] == ')') {
          ++i;
          skip_ws();
          // if a comparison follows, this was a polynomial after all
          if (i < s.size() && (s[i] == '<' || s[i] == '>' || s[i] == '=' || s[i] == '!'))
            throw ParseError("atom");
          return f;
        }
        throw ParseError("atom");
      } catch (const ParseError&) {
        i = save;
        return parse_atom();
      }
    }
    return parse_atom();
  }
  SAFormulaPtr parse_atom() {
    skip_ws();
    size_t start = i;
    int depth = 0;
    size_t oppos = std::string::npos;
    for (size_t k = i; k < s.size(); ++k) {
      char c = s[k];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == '<' || c == '>' || c == '=' || c == '!')) {
        oppos = k;
        break;
      }
      if (depth == 0 && (s.compare(k, 4, " or ") == 0 || s.compare(k, 5, " and ") == 0)) break;
    }
    if (oppos == std::string::npos) fail("expected comparison operator");
    std::string lhs = s.substr(start, oppos - start);
    i = oppos;
    Rel rel;
    if (s.compare(i, 2, ">=") == 0) {
      rel = Rel::GE;
      i += 2;
    } else if (s.compare(i, 2, "<=") == 0) {
      rel = Rel::LE;
      i += 2;
    } else if (s.compare(i, 2, "!=") == 0) {
      rel = Rel::NE;
      i += 2;
    } else if (s[i] == '>') {
      rel = Rel::GT;
      ++i;
    } else if (s[i] == '<') {
      rel = Rel::LT;
      ++i;
    } else if (s[i] == '=') {
      rel = Rel::EQ;
      ++i;
    } else {
      fail("bad comparison operator");
    }
    skip_ws();
    // right-hand side must be 0
    if (i >= s.size() || s[i] != '0') fail("atoms must compare against 0");
    ++i;
    return SAFormula::atom(parse_poly(lhs), rel);
  }
};

}  // namespace

SASet parse_saset(const std::string& text, const std::vector<std::string>& vars) {
  SetParser p(text);
  SAFormulaPtr f = p.parse_or();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  SASet out;
  out.vars = vars;
  out.formula = f;
  return out;
}

// ----- Variety -----

Variety Variety::empty_set(std::vector<std::string> vars) {
  return {std::move(vars), {Polynomial::constant(1)}};
}

Variety Variety::of(std::vector<std::string> vars, std::vector<Polynomial> gens) {
  Variety v;
  v.vars = std::move(vars);
  for (auto& g : gens) {
    if (g.is_zero()) continue;  // vanishes everywhere: no constraint
    if (g.is_constant()) return empty_set(v.vars);
    Polynomial s = squarefree_part(g);
    if (std::find(v.gens.begin(), v.gens.end(), s) == v.gens.end()) v.gens.push_back(s);
  }
  std::sort(v.gens.begin(), v.gens.end(),
            [](const Polynomial& a, const Polynomial& b) { return Polynomial::compare(a, b) < 0; });
  return v;
}

SASet Variety::as_saset() const {
  std::vector<SAFormulaPtr> cs;
  for (const auto& g : gens) cs.push_back(SAFormula::atom(g, Rel::EQ));
  SASet s;
  s.vars = vars;
  s.formula = SAFormula::conj(std::move(cs));
  return s;
}

std::string Variety::to_string() const {
  std::string s = "Z(";
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) s += "; ";
    s += gens[i].to_string();
  }
  return s + ")";
}

Variety variety_union(const Variety& a, const Variety& b) {
  if (a.is_whole() || b.is_whole()) return Variety::whole(merge_vars(a.vars, b.vars));
  std::vector<Polynomial> gens;
  for (const auto& f : a.gens)
    for (const auto& g : b.gens) gens.push_back(f * g);
  return Variety::of(merge_vars(a.vars, b.vars), std::move(gens));
}

// ----- CAD-backed operations -----

DecompositionPtr adapted_cad(const SASet& S, CadCache& cache, const std::vector<Polynomial>& extra,
                             bool thom) {
  std::vector<Polynomial> polys = S.all_polys();
  for (const auto& p : extra)
    if (!p.is_constant() && std::find(polys.begin(), polys.end(), p) == polys.end())
      polys.push_back(p);
  if (S.vars.size() > 2) throw DomainError("adapted_cad: ambient dimension > 2");
  return decompose(polys, S.vars, cache, thom);
}

std::vector<char> cells_of(const Decomposition& D, const SASet& S) {
  std::vector<char> sel(D.cells.size(), 0);
  for (size_t c = 0; c < D.cells.size(); ++c) {
    auto sign_fn = [&](const Polynomial& p) {
      int id = D.find_input(p);
      if (id < 0) throw DomainError("cells_of: atom not adapted: " + p.to_string());
      return D.cells[c].input_signs[(size_t)id];
    };
    bool in = S.formula->eval(sign_fn);
    if (in)
      for (const auto& g : S.ambient_variety)
        if (!g.is_constant() && sign_fn(g) != 0) {
          in = false;
          break;
        } else if (g.is_constant() && sign_of(g.constant_value()) != 0) {
          in = false;
          break;
        }
    sel[c] = in ? 1 : 0;
  }
  return sel;
}

bool member(const SASet& S, Point pt) {
  auto sign_fn = [&](const Polynomial& p) {
    Point copy = pt;
    return sign_at_point(p, copy);
  };
  for (const auto& g : S.ambient_variety) {
    if (g.is_constant()) {
      if (sign_of(g.constant_value()) != 0) return false;
      continue;
    }
    if (sign_fn(g) != 0) return false;
  }
  return S.formula->eval(sign_fn);
}

int set_dimension(const SASet& S, CadCache& cache) {
  auto D = adapted_cad(S, cache);
  auto sel = cells_of(*D, S);
  int dim = -1;
  for (size_t c = 0; c < sel.size(); ++c)
    if (sel[c]) dim = std::max(dim, D->cells[c].dim);
  return dim;
}

bool set_empty(const SASet& S, CadCache& cache) { return set_dimension(S, cache) < 0; }

bool sets_equal(const SASet& a, const SASet& b, CadCache& cache) {
  std::vector<Polynomial> polys = a.all_polys();
  for (const auto& p : b.all_polys())
    if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(p);
  std::vector<std::string> vars = merge_vars(a.vars, b.vars);
  auto D = decompose(polys, vars, cache);
  SASet a2 = a, b2 = b;
  a2.vars = vars;
  b2.vars = vars;
  auto sa = cells_of(*D, a2), sb = cells_of(*D, b2);
  return sa == sb;
}

std::vector<char> interior_cells(const Decomposition& D, const std::vector<char>& sel,
                                 const std::vector<char>& within) {
  // int(S) = within \ closure(within \ S)
  std::vector<char> comp(D.cells.size(), 0);
  for (size_t i = 0; i < comp.size(); ++i) comp[i] = within[i] && !sel[i];
  auto cl = D.closure_of(comp);
  std::vector<char> out(D.cells.size(), 0);
  for (size_t i = 0; i < out.size(); ++i) out[i] = within[i] && sel[i] && !cl[i];
  return out;
}

std::vector<char> boundary_cells(const Decomposition& D, const std::vector<char>& sel,
                                 const std::vector<char>& within) {
  // Bd(S) = closure(S) intersect closure(within \ S)
  std::vector<char> comp(D.cells.size(), 0);
  for (size_t i = 0; i < comp.size(); ++i) comp[i] = within[i] && !sel[i];
  auto cl_s = D.closure_of(sel);
  auto cl_c = D.closure_of(comp);
  std::vector<char> out(D.cells.size(), 0);
  for (size_t i = 0; i < out.size(); ++i) out[i] = cl_s[i] && cl_c[i];
  return out;
}

SASet cells_to_saset(const Decomposition& D, const std::vector<char>& sel) {
  if (D.thom_base.empty() && !D.base_basis.empty())
    throw DomainError("cells_to_saset: decomposition was not built with Thom families");
  std::vector<SAFormulaPtr> cells;
  auto sign_to_rel = [](int s) { return s < 0 ? Rel::LT : (s == 0 ? Rel::EQ : Rel::GT); };
  for (size_t c = 0; c < D.cells.size(); ++c) {
    if (!sel[c]) continue;
    std::vector<SAFormulaPtr> conds;
    for (size_t i = 0; i < D.thom_base.size(); ++i)
      conds.push_back(
          SAFormula::atom(D.thom_base[i], sign_to_rel(D.cells[c].thom_base_signs[i])));
    for (size_t i = 0; i < D.thom_fiber.size(); ++i)
      conds.push_back(
          SAFormula::atom(D.thom_fiber[i], sign_to_rel(D.cells[c].thom_fiber_signs[i])));
    cells.push_back(SAFormula::conj(std::move(conds)));
  }
  SASet out;
  out.vars = D.vars;
  out.formula = SAFormula::disj(std::move(cells));
  return out;
}

namespace {
std::vector<char> ambient_cells(const Decomposition& D, const SASet& S) {
  if (S.ambient_variety.empty()) return std::vector<char>(D.cells.size(), 1);
  SASet amb;
  amb.vars = S.vars;
  amb.formula = SAFormula::make_true();
  amb.ambient_variety = S.ambient_variety;
  return cells_of(D, amb);
}
}  // namespace

SASet boundary(const SASet& S, CadCache& cache) {
  auto D = adapted_cad(S, cache, {}, true);
  auto sel = cells_of(*D, S);
  auto within = ambient_cells(*D, S);
  auto bd = boundary_cells(*D, sel, within);
  SASet out = cells_to_saset(*D, bd);
  out.ambient_variety = S.ambient_variety;
  return out;
}

SASet closure_set(const SASet& S, CadCache& cache) {
  auto D = adapted_cad(S, cache, {}, true);
  auto sel = cells_of(*D, S);
  SASet out = cells_to_saset(*D, D->closure_of(sel));
  out.ambient_variety = S.ambient_variety;
  return out;
}

namespace {
SAFormulaPtr reduce_formula(const SAFormulaPtr& f,
                            const std::vector<std::pair<std::string, Rational>>& pins) {
  switch (f->kind) {
    case SAFormula::kTrue:
    case SAFormula::kFalse:
      return f;
    case SAFormula::kAtom: {
      Polynomial p = f->poly;
      for (const auto& [v, c] : pins) p = p.substitute(v, c);
      return SAFormula::atom(p, f->rel);
    }
    case SAFormula::kAnd:
    case SAFormula::kOr: {
      std::vector<SAFormulaPtr> cs;
      for (const auto& c : f->children) cs.push_back(reduce_formula(c, pins));
      return f->kind == SAFormula::kAnd ? SAFormula::conj(std::move(cs))
                                        : SAFormula::disj(std::move(cs));
    }
    case SAFormula::kNot:
      return SAFormula::negate(reduce_formula(f->children[0], pins));
  }
  return f;
}
}  // namespace

SASet reduce_saset(const SASet& S, const std::vector<std::pair<std::string, Rational>>& pins) {
  SASet out;
  for (const auto& v : S.vars) {
    bool pinned = false;
    for (const auto& [pv, c] : pins)
      if (pv == v) pinned = true;
    if (!pinned) out.vars.push_back(v);
  }
  out.formula = reduce_formula(S.formula, pins);
  for (const auto& g : S.ambient_variety) {
    Polynomial s = g;
    for (const auto& [v, c] : pins) s = s.substitute(v, c);
    if (s.is_zero()) continue;
    if (s.is_constant()) {
      out.formula = SAFormula::make_false();
      continue;
    }
    out.ambient_variety.push_back(s);
  }
  return out;
}

ZarClosure zariski_closure_cells(const Decomposition& D, const std::vector<char>& sel) {
  // components: irreducible curves (vanishing basis poly of a 1-cell), exact
  // points (0-cells), or the whole plane for full-dimensional cells
  ZarClosure out;
  out.cells.assign(D.cells.size(), 0);
  std::vector<std::vector<Polynomial>> components;  // generator lists
  std::vector<std::vector<char>> comp_cells;
  bool whole = false;
  auto add_component = [&](std::vector<Polynomial> gens, std::vector<char> cc) {
    for (size_t i = 0; i < components.size(); ++i)
      if (components[i] == gens) return;
    components.push_back(std::move(gens));
    comp_cells.push_back(std::move(cc));
  };
  for (size_t c = 0; c < D.cells.size(); ++c) {
    if (!sel[c]) continue;
    const CadCell& cell = D.cells[c];
    std::vector<Polynomial> vanish;
    for (size_t i = 0; i < D.basis.size(); ++i)
      if (cell.basis_signs[i] == 0) vanish.push_back(D.basis[i]);
    if (vanish.empty()) {
      whole = true;
      continue;
    }
    if (cell.dim == 0) {
      // exact point component when the coordinates are rational; otherwise
      // the intersection of every vanishing irreducible (contains the point
      // and all of its conjugates)
      const Point& sp = cell.sample;
      bool rational = sp.all_rational();
      if (rational) {
        std::vector<Polynomial> gens;
        for (size_t i = 0; i < sp.vars.size(); ++i) {
          Rational v = std::holds_alternative<Rational>(sp.coords[i])
                           ? std::get<Rational>(sp.coords[i])
                           : std::get<AlgebraicNumber>(sp.coords[i]).rat();
          gens.push_back(Polynomial::variable(sp.vars[i]) - Polynomial::constant(v));
        }
        std::vector<char> cc(D.cells.size(), 0);
        cc[c] = 1;
        add_component(std::move(gens), std::move(cc));
        continue;
      }
      std::vector<char> cc(D.cells.size(), 0);
      for (size_t o = 0; o < D.cells.size(); ++o) {
        bool all = true;
        for (size_t i = 0; i < D.basis.size(); ++i)
          if (cell.basis_signs[i] == 0 && D.cells[o].basis_signs[i] != 0) {
            all = false;
            break;
          }
        if (all) cc[o] = 1;
      }
      add_component(std::move(vanish), std::move(cc));
      continue;
    }
    if (cell.dim >= 2) {
      whole = true;
      continue;
    }
    // 1-dimensional cell: each vanishing irreducible contains its closure;
    // keep their intersection as the component
    std::vector<char> cc(D.cells.size(), 0);
    for (size_t o = 0; o < D.cells.size(); ++o) {
      bool all = true;
      for (size_t i = 0; i < D.basis.size(); ++i)
        if (cell.basis_signs[i] == 0 && D.cells[o].basis_signs[i] != 0) {
          all = false;
          break;
        }
      if (all) cc[o] = 1;
    }
    add_component(std::move(vanish), std::move(cc));
  }
  if (whole) {
    out.variety = Variety::whole(D.vars);
    out.cells.assign(D.cells.size(), 1);
    return out;
  }
  if (components.empty()) {
    out.variety = Variety::empty_set(D.vars);
    return out;
  }
  // drop components contained in other components (cell-set inclusion)
  std::vector<bool> keep(components.size(), true);
  for (size_t i = 0; i < components.size(); ++i)
    for (size_t j = 0; j < components.size(); ++j) {
      if (i == j || !keep[i] || !keep[j]) continue;
      bool subset = true;
      for (size_t c = 0; c < D.cells.size(); ++c)
        if (comp_cells[i][c] && !comp_cells[j][c]) {
          subset = false;
          break;
        }
      if (subset && comp_cells[i] != comp_cells[j]) keep[i] = false;
      if (subset && comp_cells[i] == comp_cells[j] && i < j) keep[j] = false;
    }
  // union of the kept components: all products of one generator per component
  std::vector<Polynomial> gens = {Polynomial::constant(1)};
  for (size_t i = 0; i < components.size(); ++i) {
    if (!keep[i]) continue;
    std::vector<Polynomial> next;
    for (const auto& base : gens)
      for (const auto& g : components[i]) next.push_back(base * g);
    gens = std::move(next);
    for (size_t c = 0; c < D.cells.size(); ++c)
      if (comp_cells[i][c]) out.cells[c] = 1;
  }
  out.variety = Variety::of(D.vars, std::move(gens));
  return out;
}

Variety zariski_closure(const SASet& S, CadCache& cache) {
  auto D = adapted_cad(S, cache);
  auto sel = cells_of(*D, S);
  return zariski_closure_cells(*D, sel).variety;
}

bool is_zariski_closed(const SASet& S, CadCache& cache) {
  auto D0 = adapted_cad(S, cache);
  auto sel0 = cells_of(*D0, S);
  Variety V = zariski_closure_cells(*D0, sel0).variety;
  SASet vs = V.as_saset();
  vs.vars = S.vars;
  return sets_equal(S, vs, cache);
}

PrincipalReport is_principal_open(const SASet& S, CadCache& cache) {
  auto D = adapted_cad(S, cache);
  auto sel = cells_of(*D, S);
  auto within = ambient_cells(*D, S);
  auto interior = interior_cells(*D, sel, within);
  for (size_t c = 0; c < sel.size(); ++c)
    if (sel[c] && !interior[c])
      throw DomainError("is_principal_open: the set is not open (cell " + std::to_string(c) + ")");
  auto bd = boundary_cells(*D, sel, within);
  ZarClosure z = zariski_closure_cells(*D, bd);
  PrincipalReport rep;
  rep.boundary_closure = z.variety;
  for (size_t c = 0; c < sel.size(); ++c) {
    if (sel[c] && z.cells[c]) {
      rep.principal = false;
      rep.witness = D->cells[c].sample;
      return rep;
    }
  }
  rep.principal = true;
  return rep;
}

}  // namespace regulus
