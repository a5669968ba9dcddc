#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nblab/numeric.hpp"

namespace nblab {

/// Mobius function; k = 0 is rejected. Trial division, intended for small k.
int mobius(std::uint64_t k);

/// Euler totient; q = 0 is rejected.
std::uint64_t totient(std::uint64_t q);

/// mu(1..n) by a linear sieve, for batch consumers (partial sums of 1/L).
std::vector<int> mobius_sieve(std::uint64_t n);

// A Dirichlet character mod q stored as a table of exact angles:
// chi(k) = e^{2 pi i num/den} on units, 0 elsewhere. Exact angles keep
// multiplicativity checks free of rounding. Immutable after construction.
class CharacterTable {
  public:
    struct Angle {
        std::uint32_t num = 0;  // in [0, den)
        std::uint32_t den = 1;  // den = 0 marks chi(k) = 0
        bool is_zero() const { return den == 0; }
        friend bool operator==(const Angle&, const Angle&) = default;
    };

    CharacterTable(std::uint64_t q, std::vector<Angle> angles, bool principal);

    std::uint64_t modulus() const { return q_; }
    bool is_principal() const { return principal_; }

    /// chi(k), periodic in k; chi(0) treated as chi(q) (zero unless q = 1).
    cplx operator()(std::uint64_t k) const;

    /// Exact angle of chi(k) (periodic).
    Angle angle(std::uint64_t k) const;

    /// chi(1..q) as complex values.
    std::vector<cplx> values() const;

    CharacterTable conjugate() const;

    friend bool operator==(const CharacterTable& a, const CharacterTable& b) {
        return a.q_ == b.q_ && a.angles_ == b.angles_;
    }

  private:
    std::uint64_t q_;
    std::vector<Angle> angles_;  // angles_[i] = angle of chi(i+1)
    bool principal_;
};

/// All phi(q) characters mod q, constructed from the cyclic decomposition of
/// the unit group (CRT over prime powers; 2^e handled separately).
/// Index 0 is the principal character. The set is closed under conjugation.
std::vector<CharacterTable> characters_mod(std::uint64_t q,
                                           std::uint64_t size_limit = 1'000'000);

/// S_m = sum_{k<=m} chi(k) k^{1/2 - 1/p}, compensated. S_0 = 0.
cplx weighted_prefix(const CharacterTable& chi, double p, std::uint64_t m);

/// Validates p in (1, 2]; throws UsageError otherwise.
void require_p(double p);

}  // namespace nblab
