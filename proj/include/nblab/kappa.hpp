#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "nblab/arith.hpp"
#include "nblab/numeric.hpp"

namespace nblab {

// One piece of the piecewise-analytic lambda_k(x) = kappa(1/(k x)):
// value(x) = power_coeff * x^{-alpha} + const_coeff on (x_lo, x_hi].
struct Segment {
    double x_lo, x_hi;
    cplx power_coeff;
    cplx const_coeff;
};

// kappa(x) = beta x^alpha - S_floor(x), with S_m a compensated prefix cache
// extended lazily (gram assembly touches many m values). Reads take a shared
// lock; extension takes an exclusive one.
class KappaSpec {
  public:
    KappaSpec(CharacterTable chi, double p);

    const CharacterTable& chi() const { return chi_; }
    double p() const { return p_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// S_m = sum_{k<=m} chi(k) k^{1/2-1/p}; S_0 = 0.
    cplx prefix(std::uint64_t m) const;

    /// Raw pointer to S_0..S_m for hot loops. Valid until a later call
    /// extends the cache past m; callers that share the spec across threads
    /// must pre-extend to their global maximum first.
    const cplx* prefix_data(std::uint64_t m) const;

    /// kappa(x) = beta x^alpha - S_floor(x), x > 0.
    cplx kappa(double x) const;

    /// Running sup of |kappa| over x <= X (interval endpoints are the
    /// extrema since beta x^alpha is monotone between jumps).
    double sup_abs(double X) const;

    /// Cached sup used by tail bounds (scan to 1e5 on first use).
    double sup_abs_cached() const;

    /// Segments tiling (eps, 1/k] with breakpoints at 1/(k m); on
    /// (1/(k(m+1)), 1/(k m)] the piece is beta k^{-alpha} x^{-alpha} - S_m.
    std::vector<Segment> lambda_segments(std::uint64_t k, double eps) const;

    /// Analytic continuation piece on (1/k, infinity):
    /// lambda_k(x) = beta (k x)^{-alpha}  (the prefix sum is empty there).
    Segment tail_segment(std::uint64_t k) const;

  private:
    void ensure_prefix(std::uint64_t m) const;

    CharacterTable chi_;
    double p_, alpha_, beta_;
    mutable std::shared_mutex mutex_;
    mutable std::vector<cplx> prefix_;  // prefix_[m] = S_m
    mutable KahanSumC acc_;             // running compensated state behind prefix_
    mutable double sup_cache_ = -1.0;
    mutable std::once_flag sup_once_;
};

/// Builds the spec: alpha = 3/2 - 1/p, beta = phi(q)/(alpha q) for the
/// principal character; alpha = beta = 0 otherwise.
KappaSpec kappa_build(const CharacterTable& chi, double p);

/// Convenience free function mirroring KappaSpec::kappa.
cplx kappa_eval(const KappaSpec& spec, double x);

}  // namespace nblab
