#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rootpat/patterns.hpp"
#include "rootpat/poly.hpp"

namespace rootpat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // check returned none, or a violation was found
  kUsage = 2,
  kInternal = 3,  // a certificate failed its own verification
};

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1", "X^3" (n = 1) or "X1^5 X2^3" style rendering of a monomial.
std::string format_monomial(const Monomial& m);
std::string format_support(const std::vector<Monomial>& support);

/// ASCII grid over M(q, n) for n <= 2: '◆' marks Supp(P), '·' marks
/// U(q, m-1, n) and '●' marks the set D with X^k D = U for the gap shift k.
/// Rows run over the X2 exponent (top = q-2), columns over X1.
std::string render_grid(const MultiPoly& p, std::uint64_t m, const std::optional<GapCertificate>& gap);

/// First shift k in [1, q-2]^n (lexicographic) with Supp(X^k P) ∩ U(q, m-1, n)
/// empty, for arbitrary P with exponents below q-1.
std::optional<GapCertificate> find_shift(const MultiPoly& p, std::uint64_t m);

}  // namespace rootpat::cli
