#include "lcov/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lcov::nt {
namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(uint64_t n, uint64_t a) {
    if (a % n == 0) return true;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

uint64_t pollard_rho(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto f = [&](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

constexpr long double kPiSquared = 9.86960440108935861883L;

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!miller_rabin(n, a)) return false;
    return true;
}

FactoredInt factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    FactoredInt out;
    out.n = n;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        uint32_t e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.factors.emplace_back(d, e);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

FactoredInt factorize64(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize64: n must be positive");
    FactoredInt out;
    out.n = n;
    std::vector<uint64_t> primes;
    uint64_t m = n;
    for (uint64_t d = 2; d < 100 && d * d <= m; ++d)
        while (m % d == 0) {
            primes.push_back(d);
            m /= d;
        }
    factor_rec(m, primes);
    std::sort(primes.begin(), primes.end());
    for (uint64_t p : primes) {
        if (!out.factors.empty() && out.factors.back().first == p)
            ++out.factors.back().second;
        else
            out.factors.emplace_back(p, 1);
    }
    return out;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t r = n;
    for (const auto& [p, e] : factorize(n).factors) r = r / p * (p - 1);
    return r;
}

int moebius(uint64_t n) {
    auto f = factorize(n);
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

int liouville(uint64_t n) {
    uint32_t ell = 0;
    for (const auto& [p, e] : factorize(n).factors) ell += e;
    return ell % 2 == 0 ? 1 : -1;
}

uint32_t nu(uint64_t n) { return static_cast<uint32_t>(factorize(n).factors.size()); }

uint64_t partial_totient(const PartialTotientQuery& q) {
    if (q.k == 0 || q.t >= q.k)
        throw std::invalid_argument("partial_totient: requires 0 <= t < k");
    if (q.n == 0) throw std::invalid_argument("partial_totient: n must be positive");
    // x in (n*t/k, n*(t+1)/k), both endpoints excluded
    uint64_t lo = q.n * q.t / q.k + 1;
    uint64_t hi = q.n * (q.t + 1) / q.k;
    if (q.n * (q.t + 1) % q.k == 0) --hi;
    uint64_t count = 0;
    for (uint64_t x = lo; x <= hi && hi != UINT64_MAX; ++x)
        if (std::gcd(x, q.n) == 1) ++count;
    return count;
}

uint64_t partial_totient(uint64_t k, uint64_t t, uint64_t n) {
    return partial_totient(PartialTotientQuery{k, t, n});
}

uint64_t phi_6_2_closed_form(uint64_t n) {
    if (n < 7) throw std::invalid_argument("phi_6_2_closed_form: requires n >= 7");
    auto f = factorize(n);
    int64_t phi = static_cast<int64_t>(euler_phi(n));
    bool plain = n % 9 == 0;
    for (const auto& [p, e] : f.factors)
        if (p % 3 == 1) plain = true;
    int64_t num;
    if (plain) {
        num = 2 * phi;
    } else {
        uint32_t ell = 0;
        for (const auto& [p, e] : f.factors) ell += e;
        int64_t corr = (ell % 2 == 0 ? 1 : -1) * (int64_t{1} << f.factors.size());
        num = n % 3 == 0 ? 2 * phi - corr : 2 * phi - 2 * corr;
    }
    if (num < 0 || num % 12 != 0)
        throw std::logic_error("phi_6_2_closed_form: correction term not integral");
    return static_cast<uint64_t>(num / 12);
}

bool partial_totient_estimate_check(uint64_t k, uint64_t n) {
    if (k < 2 || n <= k)
        throw std::invalid_argument("partial_totient_estimate_check: requires 2 <= k < n");
    int64_t phi = static_cast<int64_t>(euler_phi(n));
    int64_t bound = static_cast<int64_t>(k - 1) * (int64_t{1} << nu(n));
    for (uint64_t t = 0; t < k; ++t) {
        int64_t pt = static_cast<int64_t>(partial_totient(k, t, n));
        if (std::abs(phi - static_cast<int64_t>(k) * pt) > bound) return false;
    }
    return true;
}

uint64_t f_three_part(uint64_t n) {
    if (n == 0) throw std::invalid_argument("f_three_part: n must be positive");
    if (n < 3) return 0;
    uint64_t num = (n - 1) * (n - 2) + 6 * ((n - 1) / 2);
    if (n % 3 == 0) num += 4;
    if (num % 12 != 0) throw std::logic_error("f_three_part: formula not integral");
    return num / 12;
}

uint64_t f_three_part_oracle(uint64_t n) {
    if (n == 0) throw std::invalid_argument("f_three_part_oracle: n must be positive");
    uint64_t count = 0;
    for (uint64_t c = 1; 3 * c <= n; ++c)
        for (uint64_t b = c; 2 * b <= n - c; ++b) ++count;  // a = n-b-c >= b
    return count;
}

uint64_t g_coprime_three_part(uint64_t n) {
    if (n < 3) throw std::invalid_argument("g_coprime_three_part: requires n >= 3");
    int64_t g = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        int mu = moebius(d);
        if (mu != 0) g += mu * static_cast<int64_t>(f_three_part(n / d));
        if (d * d != n) {
            mu = moebius(n / d);
            if (mu != 0) g += mu * static_cast<int64_t>(f_three_part(d));
        }
    }
    if (g < 0) throw std::logic_error("g_coprime_three_part: negative count");
    return static_cast<uint64_t>(g);
}

std::vector<std::array<uint64_t, 3>> enumerate_P(uint64_t n) {
    if (n < 3) throw std::invalid_argument("enumerate_P: requires n >= 3");
    std::vector<std::array<uint64_t, 3>> out;
    for (uint64_t a = 1; 3 * a <= n; ++a)
        for (uint64_t b = a; 2 * b <= n - a; ++b) {
            uint64_t c = n - a - b;
            if (std::gcd(std::gcd(a, b), c) == 1) out.push_back({a, b, c});
        }
    return out;
}

bool g_lower_bound_check(uint64_t n) {
    if (n < 3) throw std::invalid_argument("g_lower_bound_check: requires n >= 3");
    long double g = static_cast<long double>(g_coprime_three_part(n));
    long double nn = static_cast<long double>(n);
    long double lhs = nn * nn / (2.0L * kPiSquared) - (2.0L / 3.0L) * sqrtl(nn);
    const long double band = 1e-6L;
    if (lhs + band < g) return true;
    if (lhs - band > g) return false;
    throw std::logic_error("g_lower_bound_check: comparison inside guard band");
}

uint64_t bertrand_witness(uint64_t p, const FactoredInt& nf) {
    const uint64_t n = nf.n;
    if (!is_prime(p) || n % p != 0)
        throw std::invalid_argument("bertrand_witness: p must be a prime divisor of n");
    if (nf.factors.size() < 3)
        throw std::invalid_argument("bertrand_witness: n must have at least 3 prime divisors");
    if ((n % 6 == 0 && is_prime(n / 6)) || (n % 10 == 0 && is_prime(n / 10)))
        throw std::invalid_argument("bertrand_witness: n of the form 6*prime or 10*prime");

    // smallest prime r with n/(4p) < r < n/(2p)
    uint64_t r = 0;
    for (uint64_t c = n / (4 * p) + 1; 2 * p * c < n; ++c) {
        if (4 * p * c > n && is_prime(c)) {
            r = c;
            break;
        }
    }
    if (r == 0) throw std::runtime_error("bertrand_witness: no prime in search interval");

    uint64_t w;
    if (n % r != 0 || r == p) {
        w = p * r;
    } else {
        // here n = 3pr and r >= 5; pick m in {r+1, r+2} avoiding 3
        uint64_t m = (r + 1) % 3 == 0 ? r + 2 : r + 1;
        w = p * m;
    }

    auto qualifies = [&](uint64_t cand) {
        if (4 * cand < n - 2 || 2 * cand >= n || cand % p != 0) return false;
        for (const auto& [s, e] : nf.factors)
            if (s != p && cand % s == 0) return false;
        if (p != 3 && cand % 3 == 0) return false;
        return true;
    };

    // For p = 3 every odd witness is congruent to 3 mod 6, the same residue
    // as the 2j+1 invariant dimensions of the T-family; prefer the smallest
    // even witness when the divisibility constraints leave one in range.
    if (p == 3 && w % 2 != 0) {
        for (uint64_t cand = (n + 1) / 4; 2 * cand < n; ++cand) {
            if (cand % 2 == 0 && qualifies(cand)) {
                w = cand;
                break;
            }
        }
    }

    if (!qualifies(w)) throw std::runtime_error("bertrand_witness: constructed value fails its conditions");
    return w;
}

std::optional<uint64_t> primitive_prime_divisor(uint64_t q, uint32_t d) {
    if (q < 2 || d < 1) throw std::invalid_argument("primitive_prime_divisor: requires q >= 2, d >= 1");
    __uint128_t pw = 1;
    for (uint32_t i = 0; i < d; ++i) {
        pw *= q;
        if (pw > static_cast<__uint128_t>(INT64_MAX))
            throw std::invalid_argument("primitive_prime_divisor: q^d not representable");
    }
    uint64_t N = static_cast<uint64_t>(pw) - 1;
    if (N == 0) return std::nullopt;
    for (const auto& [p, e] : factorize64(N).factors) {
        bool primitive = true;
        for (uint32_t ee = 1; ee < d && primitive; ++ee)
            if (powmod(q % p, ee, p) == 1 % p) primitive = false;
        if (primitive) return p;
    }
    return std::nullopt;
}

uint64_t floor_n_over_pi_squared(uint64_t n) {
    // pi^2 * 10^15 lies strictly between these two integers
    const __uint128_t scale = 1000000000000000ULL;
    const __uint128_t lo = 9869604401089358ULL;
    const __uint128_t hi = 9869604401089359ULL;
    uint64_t f1 = static_cast<uint64_t>(static_cast<__uint128_t>(n) * scale / hi);
    uint64_t f2 = static_cast<uint64_t>(static_cast<__uint128_t>(n) * scale / lo);
    if (f1 != f2)
        throw std::logic_error("floor_n_over_pi_squared: brackets disagree");
    return f1;
}

}  // namespace lcov::nt
