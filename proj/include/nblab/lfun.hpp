#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nblab/arith.hpp"
#include "nblab/numeric.hpp"

namespace nblab {

// Euler-Maclaurin evaluation parameters. Defaults hold the absolute error
// below 1e-10 on sigma >= 0.1, |t| <= 200 (and in practice well beyond).
struct EmParams {
    int bernoulli_order = 12;      // M: correction terms B_2..B_{2M}
    double terms_per_t = 2.0;      // N = max(min_terms, ceil(terms_per_t * |t|))
    int min_terms = 20;
    std::size_t max_terms = 2'000'000;
};

struct EvalResult {
    cplx value;
    double err_bound;  // a-priori remainder bound plus rounding allowance
};

inline constexpr double kStripSigmaMin = 0.1;
inline constexpr double kStripSigmaMax = 10.0;
inline constexpr double kGuaranteedTmax = 200.0;
inline constexpr double kDefaultTol = 1e-10;

/// Hurwitz zeta zeta(s, a) for a in (0, 1], s != 1, by Euler-Maclaurin.
/// subtract_pole = true returns zeta(s, a) - 1/(s-1), regular at s = 1.
EvalResult hurwitz_zeta_full(cplx s, double a, const EmParams& params = {},
                             bool subtract_pole = false);

/// Strict wrapper: throws PoleError at s = 1 and PrecisionError when the
/// achieved bound exceeds tol.
cplx hurwitz_zeta(cplx s, double a, double tol = kDefaultTol);

/// zeta(s) = zeta(s, 1).
cplx zeta_eval(cplx s, double tol = kDefaultTol);

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q). For non-principal chi the
/// Hurwitz poles cancel exactly (pole-subtracted path near s = 1).
EvalResult l_eval_full(const CharacterTable& chi, cplx s, const EmParams& params = {});
cplx l_eval(const CharacterTable& chi, cplx s, double tol = kDefaultTol);

/// Finite sum  sum_{k<=n} mu(k) chi(k) k^{-s}  (partial series of 1/L).
cplx inv_l_partial(const CharacterTable& chi, std::uint64_t n, cplx s);

// Ordinary Dirichlet polynomial sum_{k=1}^{n} b_k k^{-s}, b stored 1-based.
class DirichletPoly {
  public:
    explicit DirichletPoly(std::vector<cplx> coeffs);

    std::size_t degree() const { return coeffs_.size(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(std::size_t k) const { return coeffs_.at(k - 1); }

    cplx eval(cplx s) const;

  private:
    std::vector<cplx> coeffs_;
};

/// Log-tapered Mobius polynomial V_n: coefficient (1 - log k / log n) mu(k).
/// V_1 = (1) by the 0/0 -> 1 convention at k = n = 1.
DirichletPoly mollifier_vn(std::uint64_t n);

}  // namespace nblab
