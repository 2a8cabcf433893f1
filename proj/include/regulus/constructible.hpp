#pragma once

#include "regulus/regulous.hpp"

namespace regulus {

// phi = sum of m_i * 1_{S_i}; equality means pointwise equality, decided on a
// common adapted CAD.
struct CfnTerm {
  long m = 0;
  SASet set;
};

struct ConstructibleFn {
  std::vector<std::string> vars;
  std::vector<CfnTerm> terms;

  static ConstructibleFn zero(std::vector<std::string> vars);
  static ConstructibleFn indicator(SASet s, long m = 1);

  std::vector<Polynomial> all_polys() const;
  long value_at(Point& pt) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

ConstructibleFn cfn_add(const ConstructibleFn& a, const ConstructibleFn& b);
ConstructibleFn cfn_scale(const ConstructibleFn& a, long k);
ConstructibleFn cfn_mul(const ConstructibleFn& a, const ConstructibleFn& b);

// per-cell values of phi on a CAD adapted to all of its polynomials
std::vector<long> cfn_cell_values(const ConstructibleFn& phi, const Decomposition& D);

struct CfnCompare {
  bool equal = true;
  std::optional<Point> witness;
};
CfnCompare cfn_compare(const ConstructibleFn& a, const ConstructibleFn& b, CadCache& cache);
inline bool cfn_equal(const ConstructibleFn& a, const ConstructibleFn& b, CadCache& cache) {
  return cfn_compare(a, b, cache).equal;
}

struct EulerReport {
  long value = 0;
  size_t cells_used = 0;
  nlohmann::json to_json() const;
};
EulerReport euler_integral(const ConstructibleFn& phi, CadCache& cache);

// Pushforward along the coordinate projection onto `axis` (fiberwise chi_c).
ConstructibleFn pushforward(const ConstructibleFn& phi, const std::string& axis, CadCache& cache);

// 1_W for W = Z(f) as an integer combination of indicator functions of
// varieties, built from the tower strata; verified pointwise at construction.
struct StronglyACCertificate {
  std::vector<std::pair<long, Variety>> terms;
  ConstructibleFn as_cfn(const std::vector<std::string>& vars) const;
  nlohmann::json to_json() const;
};
StronglyACCertificate strongly_ac_decompose(const RegulousTower& f, CadCache& cache);

}  // namespace regulus
