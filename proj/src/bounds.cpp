#include "lcov/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "lcov/covering.hpp"
#include "lcov/numtheory.hpp"

namespace lcov::bnd {

uint64_t upper_single_prime(uint32_t n) {
    if (n < 2) throw std::invalid_argument("upper_single_prime: requires n >= 2");
    uint64_t best = UINT64_MAX;
    for (const auto& [p, e] : nt::factorize(n).factors)
        best = std::min(best, cov::size_C_p(n, p));
    return best;
}

uint64_t upper_two_primes(uint32_t n) {
    auto f = nt::factorize(n).factors;
    if (f.size() < 2)
        throw std::invalid_argument("upper_two_primes: n must have two distinct prime divisors");
    return cov::size_C_p1p2(n, f[0].first, f[1].first);
}

uint64_t upper_D(uint32_t n) {
    return cov::size_D(n);
}

uint64_t lower_phi(uint32_t n) {
    if (nt::nu(n) < 2)
        throw std::invalid_argument("lower_phi: n must have two distinct prime divisors");
    return nt::euler_phi(n) / 2 + nt::nu(n);
}

uint64_t lower_psi(uint32_t n) {
    return cov::size_Psi(n);
}

uint64_t lower_pi(uint32_t n) {
    if (n < 3) throw std::invalid_argument("lower_pi: requires n >= 3");
    return nt::floor_n_over_pi_squared(n) + 1;
}

uint64_t lower_partition(uint32_t n) {
    if (nt::nu(n) < 3 || n < 98)
        throw std::invalid_argument(
            "lower_partition: requires n >= 98 with three distinct prime divisors");
    uint64_t g = nt::g_coprime_three_part(n);
    return 1 + (2 * g + n - 1) / n;
}

std::optional<Bound> exact_gamma(uint32_t n) {
    if (n < 2) return std::nullopt;
    if (n <= 4) return Bound{2, "dimension at most four"};
    auto f = nt::factorize(n).factors;
    if (f.size() == 1) {
        uint64_t p = f[0].first;
        return Bound{static_cast<uint64_t>(n) * (p - 1) / (2 * p) + 1, "prime-power dimension"};
    }
    if (f.size() == 2)
        return Bound{cov::size_C_p1p2(n, f[0].first, f[1].first), "two-prime-power dimension"};
    if (n % 6 == 0 && nt::is_prime(n / 6)) return Bound{n / 6 + 2, "six-times-prime dimension"};
    if (n % 10 == 0 && nt::is_prime(n / 10) && n / 10 > 5)
        return Bound{n / 5 + 2, "ten-times-prime dimension"};
    return std::nullopt;
}

BoundsReport report(uint32_t n) {
    if (n < 2) throw std::invalid_argument("report: requires n >= 2");
    BoundsReport r;
    r.n = n;
    r.exact = exact_gamma(n);

    if (nt::nu(n) >= 2) r.kappa_lower.push_back({lower_phi(n), "coprime-block witness set"});
    if (cov::psi_applicable(n)) r.kappa_lower.push_back({lower_psi(n), "triple-block witness set"});
    if (n >= 3) r.gamma_lower.push_back({lower_pi(n), "density of cyclic maximal tori"});
    if (nt::nu(n) >= 3 && n >= 98)
        r.gamma_lower.push_back({lower_partition(n), "three-part partition counting"});

    r.gamma_upper.push_back({upper_single_prime(n), "single-prime covering"});
    if (nt::nu(n) >= 2) r.gamma_upper.push_back({upper_two_primes(n), "two-prime covering"});
    if (n > 6) r.gamma_upper.push_back({upper_D(n), "mixed covering"});

    uint64_t lo = 1, hi = UINT64_MAX;
    for (const auto& b : r.kappa_lower) lo = std::max(lo, b.value);
    for (const auto& b : r.gamma_lower) lo = std::max(lo, b.value);
    for (const auto& b : r.gamma_upper) hi = std::min(hi, b.value);
    if (r.exact) {
        lo = r.exact->value;
        hi = r.exact->value;
    }
    r.interval = {lo, hi};
    return r;
}

std::string report_to_json(const BoundsReport& r) {
    nlohmann::json out;
    out["n"] = r.n;
    if (r.exact) {
        out["exact"] = r.exact->value;
        out["provenance"] = r.exact->provenance;
    } else {
        out["exact"] = nullptr;
        out["provenance"] = nullptr;
    }
    auto list = [](const std::vector<Bound>& bs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& b : bs)
            arr.push_back({{"value", b.value}, {"provenance", b.provenance}});
        return arr;
    };
    out["kappa_lower"] = list(r.kappa_lower);
    out["gamma_lower"] = list(r.gamma_lower);
    out["gamma_upper"] = list(r.gamma_upper);
    out["interval"] = {r.interval[0], r.interval[1]};
    return out.dump(2);
}

}  // namespace lcov::bnd
