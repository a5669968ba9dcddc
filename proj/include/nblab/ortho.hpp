#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nblab/numeric.hpp"

namespace nblab {

/// Orthonormal Dirichlet polynomial under the generalized arctangent density:
/// psi_1 = 1, psi_k(t) = (k^{1/p-it} - (k-1)^{1/p-it}) / sqrt(k^{2/p} - (k-1)^{2/p}).
cplx psi_eval(double p, std::uint64_t k, double t);

/// Weighted inner product of the monomials j^{1/p-it} and k^{1/p-it} under
/// (1/(p pi)) dt/(1/p^2+t^2); Poisson-kernel closed form min(j,k)^{2/p}.
double monomial_inner(double p, std::uint64_t j, std::uint64_t k);

/// Kernel K_n(u,v) = sum_{k<=n} psi_k(u) conj(psi_k(v)), streaming with
/// compensated accumulation; O(n) time, O(1) memory. u = v takes the
/// nonnegative |psi_k|^2 path.
cplx kernel_eval(double p, std::uint64_t n, double u, double v);

/// Streaming evaluation of K_n(u,v) at every n in ns (ascending); calls
/// snapshot(index, value) as each threshold is crossed.
void kernel_stream(double p, double u, double v, std::span<const std::uint64_t> ns,
                   const std::function<void(std::size_t, cplx)>& snapshot);

struct KernelMatrix {
    std::size_t m = 0;
    std::vector<double> nodes;
    std::uint64_t n = 0;
    Eigen::MatrixXcd H;       // H_ij = K_n(t_i, t_j)
    double cond_estimate = 0; // from the eigenvalue range of the Hermitian H
    bool underdetermined = false;  // n < m: H may be singular
};

/// Assembles H = (K_n(t_i,t_j)) for distinct nodes (|t_i - t_j| > 1e-9).
/// One streaming pass fills all entries.
KernelMatrix kernel_matrix(double p, std::uint64_t n, std::span<const double> nodes);

/// Kernel matrices for every n in n_list (ascending), one streaming pass.
std::vector<KernelMatrix> kernel_matrix_ladder(double p, std::span<const double> nodes,
                                               std::span<const std::uint64_t> n_list);

}  // namespace nblab
