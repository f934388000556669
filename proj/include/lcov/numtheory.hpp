#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lcov::nt {

struct FactoredInt {
    uint64_t n = 1;
    std::vector<std::pair<uint64_t, uint32_t>> factors;  // primes strictly increasing
};

// Trial division; intended for desk-scale n (up to ~10^7).
FactoredInt factorize(uint64_t n);

// Full 64-bit factorization (Miller-Rabin + Pollard rho). Used where values
// of the form q^d - 1 appear.
FactoredInt factorize64(uint64_t n);

bool is_prime(uint64_t n);

uint64_t euler_phi(uint64_t n);
int moebius(uint64_t n);
int liouville(uint64_t n);
uint32_t nu(uint64_t n);  // number of distinct prime divisors

struct PartialTotientQuery {
    uint64_t k = 1;
    uint64_t t = 0;  // 0 <= t < k
    uint64_t n = 1;
};

/// Number of integers x coprime with n in the open interval
/// (n*t/k, n*(t+1)/k). Boundary integers are excluded even when integral.
uint64_t partial_totient(const PartialTotientQuery& q);
uint64_t partial_totient(uint64_t k, uint64_t t, uint64_t n);

/// Closed form for the partial totient with k = 6, t = 2; agrees with the
/// direct count for all n >= 7.
uint64_t phi_6_2_closed_form(uint64_t n);

/// True iff |phi(n) - k*phi(k,t,n)| <= (k-1)*2^nu(n) for every t in 0..k-1.
bool partial_totient_estimate_check(uint64_t k, uint64_t n);

/// Number of partitions of n into exactly three positive parts, by the
/// two-case closed formula.
uint64_t f_three_part(uint64_t n);
/// Same count by direct enumeration of triples a >= b >= c >= 1.
uint64_t f_three_part_oracle(uint64_t n);

/// Number of three-part partitions of n whose parts have no common divisor
/// greater than 1, via Moebius inversion over f.
uint64_t g_coprime_three_part(uint64_t n);
/// All triples (a,b,c), a <= b <= c, a+b+c = n, gcd(a,b,c) = 1, in
/// lexicographic order.
std::vector<std::array<uint64_t, 3>> enumerate_P(uint64_t n);

/// n^2/(2*pi^2) - (2/3)*sqrt(n) < g(n), decided with a guard band so the
/// verdict is exact over the tested range.
bool g_lower_bound_check(uint64_t n);

/// Returns w_p with (n-2)/4 <= w_p < n/2, p | w_p, no other prime divisor
/// of n dividing w_p, and 3 not dividing w_p when p != 3. Requires p | n,
/// nu(n) >= 3, and n not of the form 6*prime or 10*prime. Ties are broken
/// by taking the smallest qualifying prime in the search interval.
uint64_t bertrand_witness(uint64_t p, const FactoredInt& n);

/// Smallest prime dividing q^d - 1 but no q^e - 1 with 1 <= e < d.
std::optional<uint64_t> primitive_prime_divisor(uint64_t q, uint32_t d);

/// floor(n / pi^2), computed with rational brackets of pi^2 so the floor is
/// provably correct.
uint64_t floor_n_over_pi_squared(uint64_t n);

}  // namespace lcov::nt
