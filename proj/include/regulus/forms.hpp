#pragma once

#include "regulus/constructible.hpp"

namespace regulus {

// Degenerate quadratic form <f_1, ..., f_n> over polynomials or regulous
// functions on an ambient variety X. The dimension is the entry count.
using FormEntry = std::variant<Polynomial, RegulousTower>;

struct SignForm {
  std::vector<std::string> vars;
  Variety ambient;  // whole space unless stated
  std::vector<FormEntry> entries;

  static SignForm of_polys(std::vector<std::string> vars, Variety ambient,
                           std::vector<Polynomial> polys);
  static SignForm of_tower(const RegulousTower& f, Variety ambient);

  size_t dimension() const { return entries.size(); }
  std::string to_string() const;
  nlohmann::json to_json() const;
};

SignForm perp(const SignForm& a, const SignForm& b);
// Pairwise products in the paper's displayed order: f_1 g_1, ..., f_n g_1,
// f_1 g_2, ...
SignForm tensor(const SignForm& a, const SignForm& b, CadCache& cache);

// Lambda: the constructible function sum of sign(f_i).
ConstructibleFn signature(const SignForm& a, CadCache& cache);

struct SimilarReport {
  bool equal = true;
  std::optional<Point> witness;
};
SimilarReport similar(const SignForm& a, const SignForm& b, CadCache& cache);

// Slice-exact similarity for 3-variable entries plus a seeded sample audit.
struct SlicedSimilarReport {
  bool equal = true;
  std::string axis;
  std::vector<Rational> slices;
  size_t samples = 0;
  std::optional<Point> witness;  // within a failing slice
  std::optional<Rational> witness_slice;
};
SlicedSimilarReport similar_sliced(const SignForm& a, const SignForm& b, const SliceSpec& slices,
                                   int sample_count, unsigned seed, CadCache& cache);

// Sound dimension reductions: drops identically-zero entries and cancelling
// pairs; the result is verified similar to the input (never guaranteed
// anisotropic).
SignForm reduce(const SignForm& a, CadCache& cache);

// The paper's characteristic recipes for Z(f), X \ Z(f), S(f), Sbar(f);
// every emitted form is verified against its claimed indicator function.
struct CharacteristicForms {
  SignForm z_form;        // signature = 1_{Z(f)}
  SignForm nz_form;       // signature = 1_{X \ Z(f)}
  SignForm s_form;        // signature = s_mult * 1_{S(f)}
  long s_mult = 2;        // 1 when f is nonnegative on X
  SignForm sbar_form;     // signature = sbar_mult * 1_{Sbar(f)}
  long sbar_mult = 2;     // 1 when f is nonnegative on X
};
CharacteristicForms characteristic_forms(const RegulousTower& f, const SignForm& rho_f,
                                         const SignForm& rho_f2, CadCache& cache);

// Text syntax: `<entry; entry; ...>`, entries are polynomial expressions or
// `@tower:NAME` references resolved through the callback.
SignForm parse_form(const std::string& text, const std::vector<std::string>& vars,
                    const Variety& ambient,
                    const std::function<RegulousTower(const std::string&)>& resolve_tower);

}  // namespace regulus
