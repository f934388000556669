#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lcov/covering.hpp"
#include "lcov/numtheory.hpp"

using namespace lcov;
using cov::ClassDescriptor;
using cov::WitnessMember;

namespace {

std::multiset<std::string> labels(const cov::CoveringCertificate& c) {
    std::multiset<std::string> out;
    for (const auto& cls : c.classes) out.insert(cov::class_label(cls));
    return out;
}

}  // namespace

TEST_CASE("single-prime covering: explicit small instances") {
    auto c62 = cov::build_C_p(6, 2);
    CHECK(c62.claimed_size == 3);
    CHECK(labels(c62) == std::multiset<std::string>{"efs(2)", "sss(1)", "sss(3)"});
    CHECK(cov::size_C_p(6, 2) == 3);

    auto c93 = cov::build_C_p(9, 3);
    CHECK(c93.claimed_size == 4);
    CHECK(labels(c93) == std::multiset<std::string>{"efs(3)", "sss(1)", "sss(2)", "sss(4)"});
    CHECK(cov::size_C_p(9, 3) == 4);
}

TEST_CASE("single-prime covering: size formula matches construction") {
    for (uint32_t n = 2; n <= 400; ++n) {
        for (const auto& [p, e] : nt::factorize(n).factors) {
            auto c = cov::build_C_p(n, p);
            CHECK(c.claimed_size == cov::size_C_p(n, p));
        }
    }
    CHECK_THROWS(cov::build_C_p(10, 3));  // 3 does not divide 10
    CHECK_THROWS(cov::build_C_p(12, 4));  // not prime
}

TEST_CASE("two-prime covering: explicit instances and size formula") {
    auto c30 = cov::build_C_p1p2(30, 2, 3);
    CHECK(c30.claimed_size == 7);
    CHECK(cov::size_C_p1p2(30, 2, 3) == 7);

    auto c12 = cov::build_C_p1p2(12, 2, 3);
    CHECK(labels(c12) ==
          std::multiset<std::string>{"efs(2)", "efs(3)", "sss(1)", "sss(5)"});

    for (uint32_t n = 6; n <= 400; ++n) {
        auto f = nt::factorize(n).factors;
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = i + 1; j < f.size(); ++j) {
                auto c = cov::build_C_p1p2(n, f[i].first, f[j].first);
                CHECK(c.claimed_size == cov::size_C_p1p2(n, f[i].first, f[j].first));
            }
    }
    CHECK_THROWS(cov::build_C_p1p2(30, 2, 7));
    CHECK_THROWS(cov::build_C_p1p2(12, 2, 2));
}

TEST_CASE("mixed covering D: explicit instances and size formula") {
    auto d30 = cov::build_D(30);
    CHECK(d30.claimed_size == 15);
    CHECK(cov::size_D(30) == 15);
    std::multiset<std::string> expected{"sss(1)", "sss(2)", "sss(3)", "sss(4)",  "sss(5)",
                                        "sss(6)", "sss(7)", "sss(8)", "sss(9)",  "sss(10)",
                                        "sss(11)", "sss(13)", "efs(2)", "efs(3)", "efs(5)"};
    CHECK(labels(d30) == expected);

    auto d7 = cov::build_D(7);
    CHECK(d7.claimed_size == 4);
    CHECK(labels(d7) == std::multiset<std::string>{"sss(1)", "sss(2)", "sss(3)", "efs(7)"});

    for (uint32_t n = 7; n <= 400; ++n)
        CHECK(cov::build_D(n).claimed_size == cov::size_D(n));
    CHECK_THROWS(cov::build_D(6));
}

TEST_CASE("class membership at shape level") {
    // shape with factor degrees 2+2 (one factor squared): dims {0,2,4}
    mg::CharShape s{{2, 2}};
    CHECK(cov::member(s, 4, {ClassDescriptor::Kind::Sss, 2}));
    CHECK(!cov::member(s, 4, {ClassDescriptor::Kind::Sss, 1}));
    CHECK(cov::member(s, 4, {ClassDescriptor::Kind::Efs, 2}));

    mg::CharShape t{{1, 1}, {3, 1}};
    CHECK(cov::member(t, 4, {ClassDescriptor::Kind::Sss, 1}));
    CHECK(cov::member(t, 4, {ClassDescriptor::Kind::Sss, 3}));
    CHECK(!cov::member(t, 4, {ClassDescriptor::Kind::Sss, 2}));
    CHECK(!cov::member(t, 4, {ClassDescriptor::Kind::Efs, 2}));

    CHECK_THROWS(cov::member(t, 5, {ClassDescriptor::Kind::Sss, 1}));
}

TEST_CASE("Phi: explicit members and size relation") {
    auto p30 = cov::build_Phi(30);
    std::multiset<std::string> seen;
    for (const auto& m : p30.members) seen.insert(cov::member_label(m));
    CHECK(seen == std::multiset<std::string>{"Sigma(2)", "Sigma(3)", "Sigma(5)", "Sigma(1)",
                                             "Sigma(7)", "Sigma(11)", "Sigma(13)"});
    CHECK(p30.members.size() == cov::size_Phi(30));

    CHECK(cov::build_Phi(9).members.size() == 4);
    CHECK(cov::size_Phi(9) == 4);

    // n = 2p: the epsilon correction kicks in
    CHECK(cov::build_Phi(10).members.size() == 3);
    CHECK(cov::size_Phi(10) == 3);
    CHECK(cov::build_Phi(14).members.size() == 4);
    CHECK(cov::size_Phi(14) == 4);

    // construction is one short of the closed form at n = 4 and prime n
    CHECK(cov::build_Phi(4).members.size() + 1 == cov::size_Phi(4));
    for (uint32_t n : {5, 7, 11, 13, 97})
        CHECK(cov::build_Phi(n).members.size() + 1 == cov::size_Phi(n));

    for (uint32_t n = 5; n <= 400; ++n)
        if (!nt::is_prime(n))
            CHECK(cov::build_Phi(n).members.size() == cov::size_Phi(n));
}

TEST_CASE("PhiPlus: adds the middle block") {
    CHECK(cov::build_PhiPlus(6).members.size() == 3);
    CHECK(cov::build_PhiPlus(10).members.size() == 4);
    CHECK(cov::build_PhiPlus(14).members.size() == 5);
    CHECK(cov::build_PhiPlus(10).members.back() ==
          WitnessMember{WitnessMember::Kind::Sigma, 5, {}});
    CHECK_THROWS(cov::build_PhiPlus(12));
    CHECK_THROWS(cov::build_PhiPlus(4));
}

TEST_CASE("Psi: applicability, sizes, explicit spot checks") {
    CHECK(!cov::psi_applicable(12));    // only two prime divisors
    CHECK(!cov::psi_applicable(42));    // 6 * 7
    CHECK(!cov::psi_applicable(110));   // 10 * 11
    CHECK(cov::psi_applicable(60));
    CHECK(cov::psi_applicable(105));
    CHECK(cov::psi_applicable(1155));

    CHECK(cov::size_Psi(105) == 24);
    CHECK(cov::build_Psi(105).members.size() == 24);
    CHECK(cov::build_Psi(60).members.size() == cov::size_Psi(60));
    CHECK(cov::build_Psi(1155).members.size() == cov::size_Psi(1155));

    for (uint32_t n = 30; n <= 600; ++n)
        if (cov::psi_applicable(n))
            CHECK(cov::build_Psi(n).members.size() == cov::size_Psi(n));

    CHECK_THROWS(cov::build_Psi(12));
    CHECK_THROWS(cov::build_Psi(66));
}

TEST_CASE("Omega: one Singer element plus the coprime three-part classes") {
    CHECK(cov::build_Omega(3).members.size() == 2);
    CHECK(cov::build_Omega(6).members.size() == 3);
    CHECK(cov::build_Omega(9).members.size() == 7);
    for (uint32_t n = 3; n <= 200; ++n)
        CHECK(cov::build_Omega(n).members.size() == 1 + nt::g_coprime_three_part(n));
    CHECK(cov::build_Omega(6).members.front().kind == WitnessMember::Kind::Gamma);
}

TEST_CASE("member dims: subset sums, with complement symmetry for Sigma") {
    WitnessMember s{WitnessMember::Kind::Sigma, 3, {}};
    CHECK(cov::member_dims(s, 10) == std::set<uint32_t>{0, 3, 7, 10});
    WitnessMember t{WitnessMember::Kind::T, 4, {}};
    // degrees 4, 5, n - 9
    CHECK(cov::member_dims(t, 21) ==
          std::set<uint32_t>{0, 4, 5, 9, 12, 16, 17, 21});
    WitnessMember g{WitnessMember::Kind::GLambda, 0, {1, 2, 4}};
    CHECK(cov::member_dims(g, 7) == std::set<uint32_t>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("structural independence: Phi and PhiPlus over a range") {
    for (uint32_t n = 5; n <= 300; ++n) {
        auto r = cov::structural_independence_check(cov::build_Phi(n));
        INFO("Phi n=", n, " detail=", r.detail);
        CHECK(r.pass);
    }
    for (uint32_t p = 3; p <= 150; ++p) {
        if (!nt::is_prime(p)) continue;
        auto r = cov::structural_independence_check(cov::build_PhiPlus(2 * p));
        INFO("PhiPlus p=", p, " detail=", r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("structural independence: Psi passes for odd n, fails for n divisible by 6") {
    auto r105 = cov::structural_independence_check(cov::build_Psi(105));
    INFO(r105.detail);
    CHECK(r105.pass);

    // when 6 | n the witness for the prime 3 is forced odd and collides with
    // a T member on a shared invariant dimension
    auto r60 = cov::structural_independence_check(cov::build_Psi(60));
    CHECK(!r60.pass);
    CHECK(r60.detail.find("21") != std::string::npos);
}

TEST_CASE("structural independence: Omega counting property") {
    for (uint32_t n : {6u, 9u, 12u, 30u, 60u, 105u, 120u}) {
        auto r = cov::structural_independence_check(cov::build_Omega(n));
        INFO("Omega n=", n, " detail=", r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("structural independence: rejects an artificial collision") {
    cov::KappaWitness w;
    w.n = 10;
    w.name = "Phi";
    w.members.push_back({WitnessMember::Kind::Sigma, 1, {}});
    w.members.push_back({WitnessMember::Kind::Sigma, 1, {}});
    auto r = cov::structural_independence_check(w);
    CHECK(!r.pass);
    CHECK(r.detail.find("Sigma(1)") != std::string::npos);
}

TEST_CASE("realize_member: blocks match the symbolic degrees") {
    const auto& f2 = gf::Field::get(2, 1);
    auto gl6 = mg::GroupSpec::gl(f2, 6);
    auto phi = cov::build_Phi(6);
    for (const auto& m : phi.members) {
        auto x = cov::realize_member(gl6, m);
        auto shape = mg::char_shape(x);
        std::multiset<uint32_t> got, want;
        for (const auto& [d, mult] : shape)
            for (uint32_t i = 0; i < mult; ++i) got.insert(d);
        for (uint32_t d : cov::member_degrees(m, 6)) want.insert(d);
        CHECK(got == want);
    }
    auto spec = cov::group_for({mg::GroupKind::SL, 0}, f2, 4);
    CHECK(spec.kind == mg::GroupKind::SL);
}

TEST_CASE("certificate JSON round-trip and strictness") {
    auto c = cov::build_C_p1p2(12, 2, 3);
    auto text = cov::certificate_to_json(c);
    auto back = cov::certificate_from_json(text);
    CHECK(back.n == c.n);
    CHECK(back.method == c.method);
    CHECK(back.classes == c.classes);
    CHECK(back.claimed_size == c.claimed_size);

    CHECK_THROWS(cov::certificate_from_json("{"));
    CHECK_THROWS(cov::certificate_from_json(R"({"n":6})"));
    // unknown top-level field
    CHECK_THROWS(cov::certificate_from_json(
        R"({"n":6,"group":"GL","method":"C_p","classes":[],"claimed_size":0,"extra":1})"));
    // unknown class field
    CHECK_THROWS(cov::certificate_from_json(
        R"({"n":6,"group":"GL","method":"C_p","classes":[{"type":"sss","dim":1,"z":2}],"claimed_size":1})"));
    // claimed size mismatch
    CHECK_THROWS(cov::certificate_from_json(
        R"({"n":6,"group":"GL","method":"C_p","classes":[{"type":"sss","dim":1}],"claimed_size":2})"));
    // efs degree must be a prime divisor of n
    CHECK_THROWS(cov::certificate_from_json(
        R"({"n":6,"group":"GL","method":"custom","classes":[{"type":"efs","degree":5}],"claimed_size":1})"));
    // duplicate class
    CHECK_THROWS(cov::certificate_from_json(
        R"({"n":6,"group":"GL","method":"custom","classes":[{"type":"sss","dim":1},{"type":"sss","dim":1}],"claimed_size":2})"));
    // intermediate group form
    auto inter = cov::certificate_from_json(
        R"({"n":6,"group":{"intermediate_index":2},"method":"custom","classes":[],"claimed_size":0})");
    CHECK(inter.group.kind == mg::GroupKind::Intermediate);
    CHECK(inter.group.intermediate_index == 2);
}

TEST_CASE("witness JSON round-trip and strictness") {
    for (auto w : {cov::build_Phi(30), cov::build_PhiPlus(10), cov::build_Psi(105),
                   cov::build_Omega(9)}) {
        auto text = cov::witness_to_json(w);
        auto back = cov::witness_from_json(text);
        CHECK(back.n == w.n);
        CHECK(back.name == w.name);
        CHECK(back.members == w.members);
    }
    CHECK_THROWS(cov::witness_from_json(R"({"n":6,"group":"GL","name":"Nope","members":[]})"));
    CHECK_THROWS(cov::witness_from_json(
        R"({"n":6,"group":"GL","name":"Phi","members":[{"type":"sigma","k":4}]})"));
    CHECK_THROWS(cov::witness_from_json(
        R"({"n":9,"group":"GL","name":"Omega","members":[{"type":"g_lambda","parts":[2,3,4],"x":1}]})"));
    CHECK_THROWS(cov::witness_from_json(
        R"({"n":9,"group":"GL","name":"Omega","members":[{"type":"g_lambda","parts":[3,3,3]}]})"));
    CHECK_THROWS(cov::witness_from_json(
        R"({"n":9,"group":"GL","name":"Omega","members":[{"type":"gamma","exponent_symbol":"q"}]})"));
}
