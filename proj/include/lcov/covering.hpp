#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lcov/matgroup.hpp"

namespace lcov::cov {

/// A conjugacy class of maximal subgroups, described by type and parameter:
/// efs(d) — normalizer of an embedded GL_{n/d}(q^d), d prime dividing n;
/// sss(k) — stabilizer of a k-dimensional subspace, 1 <= k <= n-1.
struct ClassDescriptor {
    enum class Kind { Efs, Sss };
    Kind kind;
    uint32_t value;  // degree for Efs, dimension for Sss

    bool operator==(const ClassDescriptor&) const = default;
};

std::string class_label(const ClassDescriptor& c);  // "efs(2)" / "sss(3)"

/// Group identification without a field: certificates and witnesses are
/// q-independent.
struct GroupId {
    mg::GroupKind kind = mg::GroupKind::GL;
    uint64_t intermediate_index = 0;  // meaningful only for Intermediate

    bool operator==(const GroupId&) const = default;
};

struct CoveringCertificate {
    uint32_t n = 0;
    GroupId group;
    std::string method;  // "C_p" | "C_p1p2" | "D" | "custom"
    std::vector<ClassDescriptor> classes;
    uint64_t claimed_size = 0;
};

struct WitnessMember {
    enum class Kind { Sigma, T, Y, GLambda, Gamma };
    Kind kind;
    uint64_t param = 0;               // k for Sigma, j for T, p for Y
    std::array<uint32_t, 3> parts{};  // for GLambda

    bool operator==(const WitnessMember&) const = default;
};

std::string member_label(const WitnessMember& m);

struct KappaWitness {
    uint32_t n = 0;
    GroupId group;
    std::string name;  // "Phi" | "PhiPlus" | "Psi" | "Omega"
    std::vector<WitnessMember> members;
};

/// Class membership at shape level. sss(k): k is an invariant dimension.
/// efs(p): every factor degree is divisible by p (the sufficient criterion;
/// sound for covering verification).
bool member(const mg::CharShape& shape, uint32_t n, const ClassDescriptor& c);

CoveringCertificate build_C_p(uint32_t n, uint64_t p);
uint64_t size_C_p(uint32_t n, uint64_t p);

CoveringCertificate build_C_p1p2(uint32_t n, uint64_t p1, uint64_t p2);
uint64_t size_C_p1p2(uint32_t n, uint64_t p1, uint64_t p2);

CoveringCertificate build_D(uint32_t n);
uint64_t size_D(uint32_t n);

KappaWitness build_Phi(uint32_t n);
/// Closed-form size phi(n)/2 + nu(n) - [n = 2p]. The construction is
/// smaller by one when n = 4 or n is prime (the "p < n/2" clause excludes
/// the relevant Sigma); callers compare against build_Phi(n).members.size().
uint64_t size_Phi(uint32_t n);

KappaWitness build_PhiPlus(uint32_t n);  // n = 2p, p odd prime

bool psi_applicable(uint32_t n);  // nu >= 3 and n not of the form 6p or 10p
KappaWitness build_Psi(uint32_t n);
uint64_t size_Psi(uint32_t n);

KappaWitness build_Omega(uint32_t n);  // n >= 3

/// Block degrees of a member (symbolic, q-independent).
std::vector<uint32_t> member_degrees(const WitnessMember& m, uint32_t n);
/// Invariant dimensions forced by the block structure: all subset sums.
std::set<uint32_t> member_dims(const WitnessMember& m, uint32_t n);

struct IndependenceReport {
    bool pass = true;
    std::string detail;  // offending pair / counting violation when !pass
};

/// For Phi/PhiPlus/Psi: pairwise check that invariant-dimension sets of
/// distinct members intersect only in {0, n} and that no single efs class
/// covers two members. For Omega: the counting property — every sss class
/// covers at most n/2 of the g_lambda members and the exceptional classes
/// (a = 2, b = c) cover at most n/4.
IndependenceReport structural_independence_check(const KappaWitness& w);

/// Materialize a witness member as a matrix in a concrete group.
mg::Mat realize_member(const mg::GroupSpec& g, const WitnessMember& m);
mg::GroupSpec group_for(const GroupId& id, const gf::Field& f, uint32_t n);

// JSON (strict: unknown fields rejected)
std::string certificate_to_json(const CoveringCertificate& c);
CoveringCertificate certificate_from_json(const std::string& text);
std::string witness_to_json(const KappaWitness& w);
KappaWitness witness_from_json(const std::string& text);

}  // namespace lcov::cov
