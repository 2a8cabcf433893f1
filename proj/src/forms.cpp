#include "regulus/forms.hpp"

#include <algorithm>
#include <random>

namespace regulus {

SignForm SignForm::of_polys(std::vector<std::string> vars, Variety ambient,
                            std::vector<Polynomial> polys) {
  SignForm f;
  f.vars = std::move(vars);
  f.ambient = std::move(ambient);
  for (auto& p : polys) f.entries.emplace_back(std::move(p));
  if (f.entries.empty()) throw DomainError("SignForm: empty entry list");
  return f;
}

SignForm SignForm::of_tower(const RegulousTower& t, Variety ambient) {
  SignForm f;
  f.vars = t.vars;
  f.ambient = std::move(ambient);
  f.entries.emplace_back(t);
  return f;
}

std::string SignForm::to_string() const {
  std::string s = "<";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) s += "; ";
    if (std::holds_alternative<Polynomial>(entries[i]))
      s += std::get<Polynomial>(entries[i]).to_string();
    else
      s += "@tower{" + std::get<RegulousTower>(entries[i]).to_string() + "}";
  }
  return s + ">";
}

nlohmann::json SignForm::to_json() const {
  nlohmann::json j;
  j["vars"] = vars;
  nlohmann::json amb = nlohmann::json::array();
  for (const auto& g : ambient.gens) amb.push_back(g.to_string());
  j["ambient"] = amb;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json ej;
    if (std::holds_alternative<Polynomial>(e)) {
      ej["kind"] = "poly";
      ej["poly"] = std::get<Polynomial>(e).to_string();
    } else {
      ej["kind"] = "tower";
      ej["tower"] = std::get<RegulousTower>(e).to_json();
    }
    es.push_back(ej);
  }
  j["entries"] = es;
  return j;
}

namespace {
void require_same_ambient(const SignForm& a, const SignForm& b, const char* op) {
  if (a.ambient.gens != b.ambient.gens)
    throw DomainError(std::string(op) + ": forms live on different ambient varieties");
}
}  // namespace

SignForm perp(const SignForm& a, const SignForm& b) {
  require_same_ambient(a, b, "perp");
  SignForm out = a;
  out.vars = merge_vars(a.vars, b.vars);
  for (const auto& e : b.entries) out.entries.push_back(e);
  return out;
}

namespace {
FormEntry entry_product(const FormEntry& a, const FormEntry& b, CadCache& cache) {
  if (std::holds_alternative<Polynomial>(a) && std::holds_alternative<Polynomial>(b))
    return std::get<Polynomial>(a) * std::get<Polynomial>(b);
  if (std::holds_alternative<Polynomial>(a))
    return tower_scale(std::get<RegulousTower>(b), std::get<Polynomial>(a));
  if (std::holds_alternative<Polynomial>(b))
    return tower_scale(std::get<RegulousTower>(a), std::get<Polynomial>(b));
  return tower_product(std::get<RegulousTower>(a), std::get<RegulousTower>(b), cache);
}
}  // namespace

SignForm tensor(const SignForm& a, const SignForm& b, CadCache& cache) {
  require_same_ambient(a, b, "tensor");
  SignForm out;
  out.vars = merge_vars(a.vars, b.vars);
  out.ambient = a.ambient;
  // paper order: f1 g1, ..., fn g1, f1 g2, ..., fn g2, ..., fn gm
  for (const auto& g : b.entries)
    for (const auto& f : a.entries) out.entries.push_back(entry_product(f, g, cache));
  return out;
}

ConstructibleFn signature(const SignForm& a, CadCache& cache) {
  (void)cache;
  if (a.vars.size() > 2)
    throw DomainError("signature: 3-variable forms are handled through slices");
  ConstructibleFn out = ConstructibleFn::zero(a.vars);
  auto with_ambient = [&](SASet s) {
    for (const auto& g : a.ambient.gens)
      if (std::find(s.ambient_variety.begin(), s.ambient_variety.end(), g) ==
          s.ambient_variety.end())
        s.ambient_variety.push_back(g);
    s.vars = a.vars;
    return s;
  };
  for (const auto& e : a.entries) {
    if (std::holds_alternative<Polynomial>(e)) {
      const Polynomial& p = std::get<Polynomial>(e);
      out.terms.push_back({1, with_ambient(SASet::from_atom(a.vars, p, Rel::GT))});
      out.terms.push_back({-1, with_ambient(SASet::from_atom(a.vars, p, Rel::LT))});
    } else {
      const RegulousTower& t = std::get<RegulousTower>(e);
      out.terms.push_back({1, with_ambient(pos_set(t))});
      out.terms.push_back({-1, with_ambient(neg_set(t))});
    }
  }
  return out;
}

SimilarReport similar(const SignForm& a, const SignForm& b, CadCache& cache) {
  require_same_ambient(a, b, "similar");
  auto rep = cfn_compare(signature(a, cache), signature(b, cache), cache);
  SimilarReport out;
  out.equal = rep.equal;
  out.witness = rep.witness;
  return out;
}

namespace {

SignForm slice_form(const SignForm& f, const std::string& axis, const Rational& v) {
  SignForm out;
  for (const auto& var : f.vars)
    if (var != axis) out.vars.push_back(var);
  std::vector<Polynomial> gens;
  for (const auto& g : f.ambient.gens) gens.push_back(g.substitute(axis, v));
  out.ambient = Variety::of(out.vars, gens);
  for (const auto& e : f.entries) {
    if (std::holds_alternative<Polynomial>(e)) {
      out.entries.emplace_back(std::get<Polynomial>(e).substitute(axis, v));
    } else {
      const RegulousTower& t = std::get<RegulousTower>(e);
      RegulousTower st;
      st.vars = out.vars;
      for (const auto& l : t.levels) {
        std::vector<Polynomial> lg;
        bool empty_level = false;
        for (const auto& g : l.variety.gens) {
          Polynomial s = g.substitute(axis, v);
          if (s.is_constant() && sign_of(s.constant_value()) != 0) {
            empty_level = true;
            break;
          }
          lg.push_back(s);
        }
        if (empty_level) break;
        st.levels.push_back(
            {Variety::of(out.vars, lg), l.p.substitute(axis, v), l.q.substitute(axis, v)});
      }
      if (st.levels.empty()) throw DomainError("slice_form: tower slice is empty");
      out.entries.emplace_back(std::move(st));
    }
  }
  return out;
}

int entry_sign_at(const FormEntry& e, Point& pt) {
  if (std::holds_alternative<Polynomial>(e)) return sign_at_point(std::get<Polynomial>(e), pt);
  return tower_sign_at(std::get<RegulousTower>(e), pt);
}

}  // namespace

SlicedSimilarReport similar_sliced(const SignForm& a, const SignForm& b, const SliceSpec& slices,
                                   int sample_count, unsigned seed, CadCache& cache) {
  require_same_ambient(a, b, "similar_sliced");
  SlicedSimilarReport rep;
  rep.axis = slices.axis;
  rep.slices = slices.values;
  for (const auto& v : slices.values) {
    SignForm sa = slice_form(a, slices.axis, v);
    SignForm sb = slice_form(b, slices.axis, v);
    auto r = similar(sa, sb, cache);
    if (!r.equal) {
      rep.equal = false;
      rep.witness = r.witness;
      rep.witness_slice = v;
      return rep;
    }
  }
  // seeded rational sample audit on the full ambient space
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dn(-64, 64);
  for (int t = 0; t < sample_count; ++t) {
    std::vector<Rational> coords;
    for (size_t i = 0; i < a.vars.size(); ++i) {
      Rational q(dn(rng), 16);
      q.canonicalize();
      coords.push_back(q);
    }
    Point pt = Point::rational(a.vars, coords);
    bool on_ambient = true;
    for (const auto& g : a.ambient.gens) {
      Point pc = pt;
      if (sign_at_point(g, pc) != 0) {
        on_ambient = false;
        break;
      }
    }
    if (!on_ambient) continue;
    long sa = 0, sb = 0;
    for (const auto& e : a.entries) {
      Point pc = pt;
      sa += entry_sign_at(e, pc);
    }
    for (const auto& e : b.entries) {
      Point pc = pt;
      sb += entry_sign_at(e, pc);
    }
    ++rep.samples;
    if (sa != sb) {
      rep.equal = false;
      rep.witness = pt;
      return rep;
    }
  }
  return rep;
}

SignForm reduce(const SignForm& a, CadCache& cache) {
  if (a.vars.size() > 2) throw DomainError("reduce: 3-variable forms are not reduced");
  SignForm cur = a;
  bool changed = true;
  auto entry_zero_on_x = [&](const FormEntry& e) {
    SASet nonzero;
    if (std::holds_alternative<Polynomial>(e)) {
      const Polynomial& p = std::get<Polynomial>(e);
      if (p.is_zero()) return true;
      nonzero = SASet::from_atom(cur.vars, p, Rel::NE);
    } else {
      const RegulousTower& t = std::get<RegulousTower>(e);
      nonzero = set_or(pos_set(t), neg_set(t));
    }
    nonzero.vars = cur.vars;
    for (const auto& g : cur.ambient.gens)
      if (std::find(nonzero.ambient_variety.begin(), nonzero.ambient_variety.end(), g) ==
          nonzero.ambient_variety.end())
        nonzero.ambient_variety.push_back(g);
    return set_empty(nonzero, cache);
  };
  while (changed) {
    changed = false;
    // rule 1: drop entries identically zero on X
    for (size_t i = 0; i < cur.entries.size(); ++i) {
      if (cur.entries.size() == 1) break;
      if (entry_zero_on_x(cur.entries[i])) {
        cur.entries.erase(cur.entries.begin() + (long)i);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // rule 2: drop pairs whose signs cancel everywhere on X
    for (size_t i = 0; i < cur.entries.size() && !changed; ++i) {
      for (size_t j = i + 1; j < cur.entries.size() && !changed; ++j) {
        SignForm pair;
        pair.vars = cur.vars;
        pair.ambient = cur.ambient;
        pair.entries = {cur.entries[i], cur.entries[j]};
        ConstructibleFn sig = signature(pair, cache);
        if (cfn_equal(sig, ConstructibleFn::zero(cur.vars), cache)) {
          cur.entries.erase(cur.entries.begin() + (long)j);
          cur.entries.erase(cur.entries.begin() + (long)i);
          changed = true;
        }
      }
    }
  }
  if (cur.entries.empty()) cur.entries.emplace_back(Polynomial());  // the form <0>
  auto check = similar(a, cur, cache);
  if (!check.equal) throw VerifyError("reduce: output failed the similarity check");
  return cur;
}

CharacteristicForms characteristic_forms(const RegulousTower& f, const SignForm& rho_f,
                                         const SignForm& rho_f2, CadCache& cache) {
  if (f.vars.size() > 2) throw DomainError("characteristic_forms: slice 3-variable towers first");
  Variety X = rho_f.ambient;
  SignForm form_f = SignForm::of_tower(f, X);
  SignForm form_f2 = SignForm::of_tower(tower_square(f, cache), X);
  if (!similar(rho_f, form_f, cache).equal)
    throw VerifyError("characteristic_forms: rho_f is not similar to <f>");
  if (!similar(rho_f2, form_f2, cache).equal)
    throw VerifyError("characteristic_forms: rho_f2 is not similar to <f^2>");
  SignForm one = SignForm::of_polys(f.vars, X, {Polynomial::constant(1)});
  SignForm minus_one = SignForm::of_polys(f.vars, X, {Polynomial::constant(-1)});
  SignForm rho_minus_f2 = tensor(minus_one, rho_f2, cache);

  auto with_ambient = [&](SASet s) {
    for (const auto& g : X.gens)
      if (std::find(s.ambient_variety.begin(), s.ambient_variety.end(), g) ==
          s.ambient_variety.end())
        s.ambient_variety.push_back(g);
    s.vars = f.vars;
    return s;
  };
  SASet zf = with_ambient(zero_set(f));
  SASet sf = with_ambient(pos_set(f));
  SASet snegf = with_ambient(neg_set(f));
  bool nonneg = set_empty(snegf, cache);

  CharacteristicForms out;
  out.z_form = perp(one, rho_minus_f2);
  if (!cfn_equal(signature(out.z_form, cache), ConstructibleFn::indicator(zf), cache))
    throw VerifyError("characteristic_forms: Z(f) recipe failed");
  out.nz_form = rho_f2;
  if (!cfn_equal(signature(out.nz_form, cache), ConstructibleFn::indicator(set_not(zf)), cache))
    throw VerifyError("characteristic_forms: X minus Z(f) recipe failed");
  if (nonneg) {
    out.s_form = rho_f;
    out.s_mult = 1;
    out.sbar_form = one;
    out.sbar_mult = 1;
  } else {
    out.s_form = perp(rho_f, rho_f2);
    out.s_mult = 2;
    out.sbar_form = perp(perp(one, rho_f), perp(one, rho_minus_f2));
    out.sbar_mult = 2;
  }
  if (!cfn_equal(signature(out.s_form, cache),
                 cfn_scale(ConstructibleFn::indicator(sf), out.s_mult), cache))
    throw VerifyError("characteristic_forms: S(f) recipe failed");
  SASet sbar = with_ambient(set_or(sf, zf));
  if (!cfn_equal(signature(out.sbar_form, cache),
                 cfn_scale(ConstructibleFn::indicator(sbar), out.sbar_mult), cache))
    throw VerifyError("characteristic_forms: Sbar(f) recipe failed");
  return out;
}

SignForm parse_form(const std::string& text, const std::vector<std::string>& vars,
                    const Variety& ambient,
                    const std::function<RegulousTower(const std::string&)>& resolve_tower) {
  std::string body = text;
  auto strip = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  body = strip(body);
  if (body.size() < 2 || body.front() != '<' || body.back() != '>')
    throw ParseError("form: expected <entry; entry; ...>");
  body = body.substr(1, body.size() - 2);
  SignForm out;
  out.vars = vars;
  out.ambient = ambient;
  size_t start = 0;
  int depth = 0;
  std::vector<std::string> parts;
  for (size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || (body[i] == ';' && depth == 0)) {
      parts.push_back(strip(body.substr(start, i - start)));
      start = i + 1;
    } else if (body[i] == '(' || body[i] == '{') {
      ++depth;
    } else if (body[i] == ')' || body[i] == '}') {
      --depth;
    }
  }
  for (const auto& part : parts) {
    if (part.empty()) throw ParseError("form: empty entry");
    if (part.rfind("@tower:", 0) == 0) {
      if (!resolve_tower) throw ParseError("form: no tower resolver available");
      out.entries.emplace_back(resolve_tower(strip(part.substr(7))));
    } else {
      out.entries.emplace_back(parse_poly(part));
    }
  }
  if (out.entries.empty()) throw ParseError("form: no entries");
  return out;
}

}  // namespace regulus
