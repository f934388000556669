#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lcov/covering.hpp"
#include "lcov/matgroup.hpp"

namespace lcov::vfy {

/// Field of the given order; throws unless q is a prime power.
const gf::Field& field_from_order(uint64_t q);

/// |GL_n(q)| = q^{n(n-1)/2} * prod_{i=1..n}(q^i - 1); throws on overflow.
uint64_t gl_order(uint32_t n, uint64_t q);
/// Order of the described group (|GL| / index).
uint64_t group_order(const mg::GroupSpec& g);

struct VerifyReport {
    uint32_t n = 0;
    uint64_t q = 0;
    uint64_t total_shapes = 0;
    uint64_t covered = 0;
    std::vector<mg::CharShape> uncovered;
    std::map<std::string, uint64_t> hits;  // class label -> shapes covered
};

/// All characteristic shapes realizable in GL_n(q): multisets of
/// (degree, multiplicity) pairs with total degree n, where the number of
/// distinct factors of degree d never exceeds the number of monic
/// irreducibles of degree d other than x. Deterministic order, no
/// duplicates. Ceiling: n <= 12, q in {2,3,4,5}.
std::vector<mg::CharShape> enumerate_shapes(uint32_t n, uint64_t q);

/// Test every realizable shape against every class of the certificate.
VerifyReport check_cover(const cov::CoveringCertificate& cert, uint64_t q);

struct MinimalityProbe {
    // class label -> true when removing the class leaves a shape uncovered
    std::vector<std::pair<std::string, bool>> needed;
    bool all_needed = true;
};

MinimalityProbe check_cover_minimality_probe(const cov::CoveringCertificate& cert, uint64_t q);

/// Iterate all invertible n x n matrices over GF(q), group them by
/// characteristic shape, and verify coverage element-by-element. Also checks
/// that every realized shape appears in enumerate_shapes. |GL_n(q)| <= 10^7.
VerifyReport exhaustive_element_check(const cov::CoveringCertificate& cert, uint64_t q);

/// Exact order of the subgroup generated by the given matrices, by
/// breadth-first closure. Aborts above the element budget.
uint64_t subgroup_closure_order(const std::vector<mg::Mat>& gens, uint64_t budget = 10000000);

struct SpotCheckReport {
    uint64_t pairs_tested = 0;
    uint64_t generated = 0;
    std::vector<std::string> failures;  // descriptions of non-generating pairs
    bool pass = true;
};

/// Sampled element-level generation evidence: for random conjugators h,
/// check that <x, y^h> is the whole group, for x, y realized from distinct
/// witness members. Deterministic (fixed seed). Group order <= 10^7.
SpotCheckReport independence_spot_check(const cov::KappaWitness& w, const gf::Field& f,
                                        uint32_t samples);

/// Same check for one explicit pair of elements.
SpotCheckReport spot_check_pair(const mg::GroupSpec& g, const mg::Mat& x, const mg::Mat& y,
                                uint32_t samples);

std::string verify_report_to_json(const VerifyReport& r);

}  // namespace lcov::vfy
