#include "nblab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nblab/errors.hpp"

namespace nblab {

void require_p(double p) {
    if (!(p > 1.0 && p <= 2.0))
        throw UsageError("p must lie in (1, 2]");
}

int mobius(std::uint64_t k) {
    if (k == 0) throw UsageError("mobius: k must be >= 1");
    int r = 1;
    for (std::uint64_t d = 2; d * d <= k; ++d) {
        if (k % d == 0) {
            k /= d;
            if (k % d == 0) return 0;
            r = -r;
        }
    }
    if (k > 1) r = -r;
    return r;
}

std::uint64_t totient(std::uint64_t q) {
    if (q == 0) throw UsageError("totient: q must be >= 1");
    std::uint64_t result = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            result -= result / d;
            while (q % d == 0) q /= d;
        }
    }
    if (q > 1) result -= result / q;
    return result;
}

std::vector<int> mobius_sieve(std::uint64_t n) {
    std::vector<int> mu(n + 1, 0);
    if (n == 0) return mu;
    mu[1] = 1;
    std::vector<std::uint32_t> primes;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            std::uint64_t ip = i * p;
            if (ip > n) break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    return mu;
}

CharacterTable::CharacterTable(std::uint64_t q, std::vector<Angle> angles, bool principal)
    : q_(q), angles_(std::move(angles)), principal_(principal) {}

CharacterTable::Angle CharacterTable::angle(std::uint64_t k) const {
    std::uint64_t r = k % q_;
    if (r == 0) r = q_;  // chi(q) slot; zero unless q = 1
    return angles_[r - 1];
}

cplx CharacterTable::operator()(std::uint64_t k) const {
    Angle a = angle(k);
    if (a.is_zero()) return {0.0, 0.0};
    if (a.num == 0) return {1.0, 0.0};
    double theta = 2.0 * std::numbers::pi * static_cast<double>(a.num) /
                   static_cast<double>(a.den);
    return {std::cos(theta), std::sin(theta)};
}

std::vector<cplx> CharacterTable::values() const {
    std::vector<cplx> out(q_);
    for (std::uint64_t k = 1; k <= q_; ++k) out[k - 1] = (*this)(k);
    return out;
}

CharacterTable CharacterTable::conjugate() const {
    std::vector<Angle> conj(angles_);
    for (Angle& a : conj) {
        if (!a.is_zero() && a.num != 0) a.num = a.den - a.num;
    }
    return CharacterTable(q_, std::move(conj), principal_);
}

namespace {

struct CyclicFactor {
    std::uint64_t order;                 // d_i
    std::vector<std::uint32_t> dlog;     // dlog of x mod p^e, indexed by residue
    std::uint64_t prime_power;           // p^e this factor lives in
};

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, base = b % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::uint64_t primitive_root_mod_p(std::uint64_t p) {
    std::uint64_t phi = p - 1;
    auto qs = prime_factors(phi);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t f : qs)
            if (pow_mod(g, phi / f, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return 1;  // p = 2
}

// Cyclic factors of (Z/p^e)* with discrete-log tables.
std::vector<CyclicFactor> factors_of_prime_power(std::uint64_t p, std::uint32_t e,
                                                 std::uint64_t pe) {
    std::vector<CyclicFactor> out;
    if (p == 2) {
        if (e == 1) return out;  // trivial group
        if (e == 2) {
            CyclicFactor f{2, std::vector<std::uint32_t>(pe, 0), pe};
            f.dlog[3] = 1;
            out.push_back(std::move(f));
            return out;
        }
        // (Z/2^e)* = <-1> x <3>
        std::uint64_t half = pe / 4;  // order of 3
        CyclicFactor sign{2, std::vector<std::uint32_t>(pe, 0), pe};
        CyclicFactor main{half, std::vector<std::uint32_t>(pe, 0), pe};
        std::uint64_t v = 1;
        for (std::uint64_t j = 0; j < half; ++j) {
            main.dlog[v] = static_cast<std::uint32_t>(j);
            sign.dlog[v] = 0;
            std::uint64_t w = pe - v;  // -v = (-1) * 3^j
            main.dlog[w] = static_cast<std::uint32_t>(j);
            sign.dlog[w] = 1;
            v = v * 3 % pe;
        }
        out.push_back(std::move(sign));
        out.push_back(std::move(main));
        return out;
    }
    std::uint64_t g = primitive_root_mod_p(p);
    std::uint64_t phi = pe / p * (p - 1);
    if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;  // lift to p^e
    CyclicFactor f{phi, std::vector<std::uint32_t>(pe, 0), pe};
    std::uint64_t v = 1;
    for (std::uint64_t j = 0; j < phi; ++j) {
        f.dlog[v] = static_cast<std::uint32_t>(j);
        v = v * g % pe;
    }
    out.push_back(std::move(f));
    return out;
}

}  // namespace

std::vector<CharacterTable> characters_mod(std::uint64_t q, std::uint64_t size_limit) {
    if (q == 0) throw UsageError("characters_mod: q must be >= 1");
    if (q > size_limit)
        throw UsageError("characters_mod: q exceeds the size limit (memory bound)");

    std::vector<CyclicFactor> factors;
    {
        std::uint64_t rest = q;
        auto take = [&](std::uint64_t d) {
            std::uint64_t pe = 1;
            std::uint32_t e = 0;
            while (rest % d == 0) { rest /= d; pe *= d; ++e; }
            auto fs = factors_of_prime_power(d, e, pe);
            for (auto& f : fs) factors.push_back(std::move(f));
        };
        for (std::uint64_t d = 2; d * d <= rest; ++d)
            if (rest % d == 0) take(d);
        if (rest > 1) take(rest);
    }

    const std::uint64_t phi = totient(q);
    std::uint64_t lam = 1;  // lcm of factor orders
    for (const auto& f : factors) lam = std::lcm(lam, f.order);

    std::vector<CharacterTable> chars;
    chars.reserve(phi);
    std::vector<std::uint64_t> tuple(factors.size(), 0);
    for (std::uint64_t idx = 0; idx < phi; ++idx) {
        std::vector<CharacterTable::Angle> angles(q);
        bool principal = true;
        for (std::uint64_t c : tuple) principal &= (c == 0);
        for (std::uint64_t k = 1; k <= q; ++k) {
            if (std::gcd(k, q) != 1) {
                angles[k - 1] = {0, 0};
                continue;
            }
            std::uint64_t num = 0;  // angle as num/lam turns
            for (std::size_t i = 0; i < factors.size(); ++i) {
                const auto& f = factors[i];
                std::uint64_t dl = f.dlog[k % f.prime_power];
                num = (num + (tuple[i] * dl % f.order) * (lam / f.order)) % lam;
            }
            std::uint64_t g = std::gcd(num, lam);
            angles[k - 1] = {static_cast<std::uint32_t>(num / g),
                             static_cast<std::uint32_t>(lam / g)};
        }
        chars.emplace_back(q, std::move(angles), principal);
        // next mixed-radix tuple
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (++tuple[i] < factors[i].order) break;
            tuple[i] = 0;
        }
    }
    return chars;
}

cplx weighted_prefix(const CharacterTable& chi, double p, std::uint64_t m) {
    require_p(p);
    const double w = 0.5 - 1.0 / p;
    KahanSumC acc;
    for (std::uint64_t k = 1; k <= m; ++k) {
        cplx c = chi(k);
        if (c == cplx{0.0, 0.0}) continue;
        acc.add(c * std::pow(static_cast<double>(k), w));
    }
    return acc.value();
}

}  // namespace nblab
