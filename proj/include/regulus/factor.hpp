#pragma once

#include <map>
#include <vector>

#include "regulus/polynomial.hpp"
#include "regulus/upoly.hpp"

namespace regulus {

struct FactorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultFactorCap = 16;  // total-degree cap, multivariate only

// Irreducible factorization over Q, up to a rational constant. Factors are
// integer-primitive with positive leading coefficient, deterministically
// ordered. Supports up to 2 variables; throws FactorError beyond the cap.
std::vector<std::pair<Polynomial, int>> factor_polynomial(const Polynomial& p,
                                                          int cap = kDefaultFactorCap);

// Univariate specialization of the above (no degree cap).
std::vector<std::pair<UPoly, int>> factor_upoly(const UPoly& p);

// Memo for factorizations; keyed by the primitive polynomial.
class FactorCache {
 public:
  explicit FactorCache(int cap = kDefaultFactorCap) : cap_(cap) {}
  const std::vector<std::pair<Polynomial, int>>& factors(const Polynomial& p);
  int cap() const { return cap_; }

 private:
  int cap_;
  std::map<Polynomial, std::vector<std::pair<Polynomial, int>>> memo_;
};

}  // namespace regulus
