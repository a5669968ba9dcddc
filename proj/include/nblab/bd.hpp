#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nblab/kappa.hpp"
#include "nblab/lfun.hpp"

namespace nblab {

// Gram data of the distance instance: G_jk = <lambda_j, lambda_k> and
// v_k = <1_(0,1), lambda_k> over the truncated supports (eps, 1/k], computed
// exactly per merged segment. tail_bound is the largest per-entry bound on
// the omitted (0, eps] mass.
struct GramSystem {
    std::size_t n = 0;
    Eigen::MatrixXcd G;
    Eigen::VectorXcd v;
    double tail_bound = 0.0;
};

struct GramEntry {
    cplx value;
    double bound;  // sup|kappa|^2 * eps, covering the omitted (0, eps]
};

struct EpsPolicy {
    double breakpoints_per_freq = 1e4;  // eps_jk = 1 / (max(j,k) * this)
    double eps_override = 0.0;          // > 0: fixed eps for every entry
    double eps_for(std::uint64_t j, std::uint64_t k) const;
};

/// <lambda_j, lambda_k> over (eps, min(1/j, 1/k)]: exact antiderivatives of
/// x^{-2 alpha}, x^{-alpha} (log when alpha = 1) and 1 on merged segments.
GramEntry gram_entry(const KappaSpec& spec, std::uint64_t j, std::uint64_t k, double eps);

/// <1_(0,1), lambda_k> over (eps, 1/k] by the same segment machinery.
GramEntry gram_moment(const KappaSpec& spec, std::uint64_t k, double eps);

GramSystem build_gram(const KappaSpec& spec, std::size_t n, const EpsPolicy& eps = {});

struct BdOptions {
    EpsPolicy eps;
    std::size_t n_cap = 64;     // these Gram matrices condition badly; hard stop
    double cond_limit = 1e12;
};

struct BdResult {
    double d2;
    double cond_estimate;
    double tail_bound;
};

/// d_n^2 = 1 - v* G^{-1} v (norm of 1_(0,1) is 1), clamped to [0, 1].
BdResult bd_distance(const KappaSpec& spec, std::size_t n, const BdOptions& opts = {});

/// d^2 for every n' = 1..n from the leading blocks of one Gram system.
std::vector<BdResult> bd_distance_profile(const KappaSpec& spec, std::size_t n,
                                          const BdOptions& opts = {});

/// Validation path: det G(lambda_1..n, 1) / det G(lambda_1..n).
double det_quotient_d2(const GramSystem& sys);

struct FreqOptions {
    double quad_tol = 1e-8;
    EmParams em;
};

struct FreqObjective {
    double value;
    double tail_report;  // |value(T) - value(T/2)|, empirical only
};

/// Frequency-domain objective (1/2pi) int_{|t|<=T} |1 - L A|^2 dt/(1/p^2+t^2),
/// with the constant part extended to the whole line in closed form so that
/// A = 0 gives exactly p/2.
FreqObjective freq_objective(const CharacterTable& chi, double p, const DirichletPoly& A,
                             double T, const FreqOptions& opts = {});

struct PlancherelOptions {
    double time_eps = 1e-6;    // time-side integration cutoff near 0
    double panel_width = 0.5;  // frequency-side composite GK15 panel width
    EmParams em;
};

struct PlancherelResult {
    double time_value;
    double freq_value;
    double discrepancy;
    double time_tail_bound;   // rigorous bound on the omitted (0, eps] mass
    double freq_tail_report;  // |freq(T) - freq(T/2)|, empirical only
};

// Cross-check of the Mellin-Plancherel isometry. Time side: exact piecewise
// integral of |1_(0,1) - sum b_k lambda_k|^2 over (eps, infinity) including
// the analytic tails beta (k x)^{-alpha}. Frequency side: the sigma = 1/2
// line with eta(s) = L(s + 1/p - 1/2), i.e. cached values of L(1/p + i t),
// and the sign-matched polynomial A_b(s) = -sum b_k k^{-s}. The L grid for
// a fixed (chi, p, T) is reused across coefficient vectors.
class PlancherelEvaluator {
  public:
    PlancherelEvaluator(const CharacterTable& chi, double p, double T,
                        const PlancherelOptions& opts = {});

    PlancherelResult check(std::span<const cplx> b) const;

    double time_norm(std::span<const cplx> b, double* tail_bound = nullptr) const;
    double freq_norm(std::span<const cplx> b, double* tail_report = nullptr) const;

  private:
    KappaSpec spec_;
    double T_;
    PlancherelOptions opts_;
    std::vector<double> nodes_;    // quadrature abscissae in t
    std::vector<double> weights_;  // GK15 weight * (1/2pi)/(1/4+t^2)
    std::vector<cplx> eta_;        // L(1/p + i t) at the nodes
    std::vector<char> inner_;      // node lies in [-T/2, T/2]
};

PlancherelResult plancherel_check(const CharacterTable& chi, double p,
                                  std::span<const cplx> b, double T,
                                  const PlancherelOptions& opts = {});

}  // namespace nblab
