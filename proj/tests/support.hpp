#pragma once

#include <vector>

#include "oracle.hpp"
#include "rootpat/field.hpp"
#include "rootpat/poly.hpp"

namespace testing_support {

inline oracle::NaiveGF naive_of(const rootpat::Field& f) {
  return oracle::NaiveGF(f.characteristic(), f.degree(), f.modulus(), f.generator().rep);
}

inline oracle::NaivePoly to_naive(const rootpat::MultiPoly& p) {
  oracle::NaivePoly out;
  for (const auto& [m, c] : p.terms()) out[m.exponents] = c.rep;
  return out;
}

inline std::vector<std::uint32_t> reps(const std::vector<rootpat::Elem>& xs) {
  std::vector<std::uint32_t> out;
  for (auto x : xs) out.push_back(x.rep);
  return out;
}

// Elements of F_q^* selected by mask bit j <-> rep j+1.
inline std::vector<rootpat::Elem> subset_of(std::uint32_t q, std::uint64_t mask) {
  std::vector<rootpat::Elem> out;
  for (std::uint32_t j = 0; j + 1 < q; ++j)
    if (mask >> j & 1) out.push_back(rootpat::Elem{j + 1});
  return out;
}

}  // namespace testing_support
