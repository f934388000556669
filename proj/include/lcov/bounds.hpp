#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcov::bnd {

/// A bound value together with a human-readable origin tag.
struct Bound {
    uint64_t value = 0;
    std::string provenance;

    bool operator==(const Bound&) const = default;
};

/// All applicable bounds for gamma and kappa at a given dimension. The
/// quantities are independent of the field size, so the report carries n
/// only. kappa lower bounds double as gamma lower bounds (kappa <= gamma);
/// gamma_lower lists the bounds that apply to gamma alone.
struct BoundsReport {
    uint32_t n = 0;
    std::optional<Bound> exact;
    std::vector<Bound> kappa_lower;
    std::vector<Bound> gamma_lower;
    std::vector<Bound> gamma_upper;
    std::array<uint64_t, 2> interval{0, 0};  // [best lower, best upper]
};

/// min over prime divisors p of the single-prime covering size. n >= 2.
uint64_t upper_single_prime(uint32_t n);
/// Two-prime covering size with the two smallest prime divisors. nu >= 2.
uint64_t upper_two_primes(uint32_t n);
/// Mixed covering size floor(n/3) + phi(6,2,n) + nu. n > 6.
uint64_t upper_D(uint32_t n);

/// phi(n)/2 + nu(n), a kappa lower bound. nu >= 2.
uint64_t lower_phi(uint32_t n);
/// The triple-block witness-set size, a kappa lower bound. nu >= 3 and n not
/// of the form 6p or 10p.
uint64_t lower_psi(uint32_t n);
/// floor(n/pi^2) + 1, a gamma lower bound. n >= 3.
uint64_t lower_pi(uint32_t n);
/// 1 + ceil(2 g(n) / n) from coprime three-part partition counting, a gamma
/// lower bound. nu >= 3 and n >= 98.
uint64_t lower_partition(uint32_t n);

/// Exact gamma value when n falls into one of the known families, with the
/// family name as provenance. Empty otherwise.
std::optional<Bound> exact_gamma(uint32_t n);

BoundsReport report(uint32_t n);
std::string report_to_json(const BoundsReport& r);

}  // namespace lcov::bnd
