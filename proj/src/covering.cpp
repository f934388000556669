#include "lcov/covering.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lcov/numtheory.hpp"

namespace lcov::cov {

using json = nlohmann::json;

std::string class_label(const ClassDescriptor& c) {
    std::ostringstream os;
    os << (c.kind == ClassDescriptor::Kind::Efs ? "efs(" : "sss(") << c.value << ")";
    return os.str();
}

std::string member_label(const WitnessMember& m) {
    std::ostringstream os;
    switch (m.kind) {
        case WitnessMember::Kind::Sigma: os << "Sigma(" << m.param << ")"; break;
        case WitnessMember::Kind::T: os << "T(" << m.param << ")"; break;
        case WitnessMember::Kind::Y: os << "Y(" << m.param << ")"; break;
        case WitnessMember::Kind::GLambda:
            os << "GLambda(" << m.parts[0] << "," << m.parts[1] << "," << m.parts[2] << ")";
            break;
        case WitnessMember::Kind::Gamma: os << "Gamma"; break;
    }
    return os.str();
}

bool member(const mg::CharShape& shape, uint32_t n, const ClassDescriptor& c) {
    uint32_t total = 0;
    for (const auto& [d, m] : shape) total += d * m;
    if (total != n) throw std::invalid_argument("member: shape total does not equal n");
    if (c.kind == ClassDescriptor::Kind::Sss) {
        return mg::invariant_dims(shape, n).count(c.value) > 0;
    }
    for (const auto& [d, m] : shape)
        if (d % c.value != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Coverings

CoveringCertificate build_C_p(uint32_t n, uint64_t p) {
    if (n < 2 || !nt::is_prime(p) || n % p != 0)
        throw std::invalid_argument("build_C_p: need n >= 2 and prime p | n");
    CoveringCertificate cert{n, {}, "C_p", {}, 0};
    cert.classes.push_back({ClassDescriptor::Kind::Efs, static_cast<uint32_t>(p)});
    for (uint32_t k = 1; 2 * k <= n; ++k)
        if (k % p != 0) cert.classes.push_back({ClassDescriptor::Kind::Sss, k});
    cert.claimed_size = cert.classes.size();
    return cert;
}

uint64_t size_C_p(uint32_t n, uint64_t p) {
    if (n < 2 || !nt::is_prime(p) || n % p != 0)
        throw std::invalid_argument("size_C_p: need n >= 2 and prime p | n");
    uint64_t base = (p - 1) * static_cast<uint64_t>(n) / (2 * p);
    uint64_t eps = (p == 2 && (n / 2) % 2 == 1) ? 1 : 0;
    return base + 1 + eps;
}

CoveringCertificate build_C_p1p2(uint32_t n, uint64_t p1, uint64_t p2) {
    if (p1 == p2 || !nt::is_prime(p1) || !nt::is_prime(p2) || n % p1 != 0 || n % p2 != 0)
        throw std::invalid_argument("build_C_p1p2: need distinct primes p1, p2 dividing n");
    CoveringCertificate cert{n, {}, "C_p1p2", {}, 0};
    cert.classes.push_back({ClassDescriptor::Kind::Efs, static_cast<uint32_t>(p1)});
    cert.classes.push_back({ClassDescriptor::Kind::Efs, static_cast<uint32_t>(p2)});
    for (uint32_t k = 1; 2 * k < n; ++k)
        if (k % p1 != 0 && k % p2 != 0) cert.classes.push_back({ClassDescriptor::Kind::Sss, k});
    cert.claimed_size = cert.classes.size();
    return cert;
}

uint64_t size_C_p1p2(uint32_t n, uint64_t p1, uint64_t p2) {
    if (p1 == p2 || !nt::is_prime(p1) || !nt::is_prime(p2) || n % p1 != 0 || n % p2 != 0)
        throw std::invalid_argument("size_C_p1p2: need distinct primes p1, p2 dividing n");
    uint64_t num = static_cast<uint64_t>(n) * (p1 - 1) * (p2 - 1);
    uint64_t den = 2 * p1 * p2;
    if (num % den != 0) throw std::logic_error("size_C_p1p2: non-integral closed form");
    return num / den + 2;
}

CoveringCertificate build_D(uint32_t n) {
    if (n <= 6) throw std::invalid_argument("build_D: requires n > 6");
    CoveringCertificate cert{n, {}, "D", {}, 0};
    for (uint32_t k = 1; 3 * k <= n; ++k) cert.classes.push_back({ClassDescriptor::Kind::Sss, k});
    for (uint32_t k = n / 3 + 1; 2 * k <= n; ++k)
        if (3 * k > n && std::gcd(k, n) == 1)
            cert.classes.push_back({ClassDescriptor::Kind::Sss, k});
    for (const auto& [p, e] : nt::factorize(n).factors)
        cert.classes.push_back({ClassDescriptor::Kind::Efs, static_cast<uint32_t>(p)});
    cert.claimed_size = cert.classes.size();
    return cert;
}

uint64_t size_D(uint32_t n) {
    if (n <= 6) throw std::invalid_argument("size_D: requires n > 6");
    return n / 3 + nt::phi_6_2_closed_form(n) + nt::nu(n);
}

// ---------------------------------------------------------------------------
// Independence witnesses

KappaWitness build_Phi(uint32_t n) {
    if (n <= 2) throw std::invalid_argument("build_Phi: requires n > 2");
    KappaWitness w{n, {}, "Phi", {}};
    for (const auto& [p, e] : nt::factorize(n).factors)
        if (2 * p < n) w.members.push_back({WitnessMember::Kind::Sigma, p, {}});
    for (uint32_t k = 1; 2 * k < n; ++k)
        if (std::gcd<uint64_t>(n, k) == 1) w.members.push_back({WitnessMember::Kind::Sigma, k, {}});
    return w;
}

uint64_t size_Phi(uint32_t n) {
    if (n <= 2) throw std::invalid_argument("size_Phi: requires n > 2");
    uint64_t eps = (n % 2 == 0 && n / 2 > 2 && nt::is_prime(n / 2)) ? 1 : 0;
    return nt::euler_phi(n) / 2 + nt::nu(n) - eps;
}

KappaWitness build_PhiPlus(uint32_t n) {
    if (n % 2 != 0 || n / 2 <= 2 || !nt::is_prime(n / 2))
        throw std::invalid_argument("build_PhiPlus: requires n = 2p with odd prime p");
    KappaWitness w = build_Phi(n);
    w.name = "PhiPlus";
    w.members.push_back({WitnessMember::Kind::Sigma, n / 2, {}});
    return w;
}

bool psi_applicable(uint32_t n) {
    if (nt::nu(n) < 3) return false;
    if (n % 6 == 0 && nt::is_prime(n / 6)) return false;
    if (n % 10 == 0 && nt::is_prime(n / 10)) return false;
    return true;
}

KappaWitness build_Psi(uint32_t n) {
    if (nt::nu(n) < 3)
        throw std::invalid_argument("build_Psi: n must have at least 3 distinct prime divisors");
    if (!psi_applicable(n))
        throw std::invalid_argument("build_Psi: n must not be equal to 6p or 10p for a prime p");
    auto nf = nt::factorize(n);
    KappaWitness w{n, {}, "Psi", {}};
    for (uint32_t j = 1; 4 * j <= n - 2; ++j)
        if (j % 3 == 1) w.members.push_back({WitnessMember::Kind::T, j, {}});
    for (uint32_t k = 1; 2 * k < n; ++k)
        if (4 * k > n && std::gcd<uint64_t>(3ull * n, k) == 1)
            w.members.push_back({WitnessMember::Kind::Sigma, k, {}});
    for (uint32_t b = 1; 12 * b < n; ++b)
        if (std::gcd<uint64_t>(n, 6ull * b) == 1)
            w.members.push_back({WitnessMember::Kind::Sigma, 6ull * b, {}});
    for (const auto& [p, e] : nf.factors)
        w.members.push_back({WitnessMember::Kind::Sigma, nt::bertrand_witness(p, nf), {}});
    return w;
}

uint64_t size_Psi(uint32_t n) {
    if (!psi_applicable(n)) throw std::invalid_argument("size_Psi: conditions not met");
    uint64_t total = (n + 6) / 12 + nt::partial_totient(12, 1, 3ull * n) + nt::nu(n);
    if (std::gcd<uint64_t>(n, 6) == 1) total += nt::partial_totient(12, 0, n);
    return total;
}

KappaWitness build_Omega(uint32_t n) {
    if (n < 3) throw std::invalid_argument("build_Omega: requires n >= 3");
    KappaWitness w{n, {}, "Omega", {}};
    w.members.push_back({WitnessMember::Kind::Gamma, 0, {}});
    for (const auto& t : nt::enumerate_P(n))
        w.members.push_back({WitnessMember::Kind::GLambda, 0,
                             {static_cast<uint32_t>(t[0]), static_cast<uint32_t>(t[1]),
                              static_cast<uint32_t>(t[2])}});
    return w;
}

// ---------------------------------------------------------------------------
// Symbolic shapes and the structural independence check

std::vector<uint32_t> member_degrees(const WitnessMember& m, uint32_t n) {
    switch (m.kind) {
        case WitnessMember::Kind::Sigma:
            return {static_cast<uint32_t>(m.param), n - static_cast<uint32_t>(m.param)};
        case WitnessMember::Kind::T: {
            uint32_t j = static_cast<uint32_t>(m.param);
            return {j, j + 1, n - 2 * j - 1};
        }
        case WitnessMember::Kind::Y: {
            uint32_t p = static_cast<uint32_t>(m.param);
            return {p, 5, n - p - 5};
        }
        case WitnessMember::Kind::GLambda: return {m.parts[0], m.parts[1], m.parts[2]};
        case WitnessMember::Kind::Gamma: return {n};
    }
    throw std::logic_error("member_degrees: unreachable");
}

std::set<uint32_t> member_dims(const WitnessMember& m, uint32_t n) {
    auto degrees = member_degrees(m, n);
    std::set<uint32_t> dims{0};
    for (uint32_t d : degrees) {
        std::set<uint32_t> next = dims;
        for (uint32_t s : dims)
            if (s + d <= n) next.insert(s + d);
        dims = std::move(next);
    }
    return dims;
}

namespace {

// primes p such that efs(p) covers the member symbolically
std::vector<uint32_t> common_efs_candidates(const std::vector<uint32_t>& degrees, uint32_t n) {
    std::vector<uint32_t> out;
    for (const auto& [p, e] : nt::factorize(n).factors) {
        bool all = true;
        for (uint32_t d : degrees)
            if (d % p != 0) all = false;
        if (all) out.push_back(static_cast<uint32_t>(p));
    }
    return out;
}

IndependenceReport omega_counting_check(const KappaWitness& w) {
    uint32_t n = w.n;
    std::vector<std::set<uint32_t>> dims;
    std::vector<const WitnessMember*> lambdas;
    for (const auto& m : w.members) {
        if (m.kind != WitnessMember::Kind::GLambda) continue;
        lambdas.push_back(&m);
        dims.push_back(member_dims(m, n));
    }
    for (uint32_t k = 1; k < n; ++k) {
        uint64_t cnt = 0;
        for (const auto& ds : dims) cnt += ds.count(k);
        if (2 * cnt > n) {
            IndependenceReport r;
            r.pass = false;
            std::ostringstream os;
            os << "sss(" << k << ") covers " << cnt << " of " << dims.size()
               << " g_lambda members, exceeding n/2";
            r.detail = os.str();
            return r;
        }
    }
    uint64_t exceptional = 0;
    for (const auto* m : lambdas)
        if (m->parts[0] == 2 && m->parts[1] == m->parts[2]) ++exceptional;
    if (4 * exceptional > n) {
        IndependenceReport r;
        r.pass = false;
        r.detail = "exceptional class count exceeds n/4";
        return r;
    }
    return {};
}

}  // namespace

IndependenceReport structural_independence_check(const KappaWitness& w) {
    if (w.name == "Omega") return omega_counting_check(w);
    uint32_t n = w.n;
    size_t count = w.members.size();
    std::vector<std::set<uint32_t>> dims(count);
    std::vector<std::vector<uint32_t>> efs(count);
    for (size_t i = 0; i < count; ++i) {
        dims[i] = member_dims(w.members[i], n);
        efs[i] = common_efs_candidates(member_degrees(w.members[i], n), n);
    }
    for (size_t i = 0; i < count; ++i) {
        for (size_t j = i + 1; j < count; ++j) {
            for (uint32_t d : dims[i]) {
                if (d == 0 || d == n) continue;
                if (dims[j].count(d)) {
                    IndependenceReport r;
                    r.pass = false;
                    std::ostringstream os;
                    os << "members " << member_label(w.members[i]) << " and "
                       << member_label(w.members[j]) << " share invariant dimension " << d;
                    r.detail = os.str();
                    return r;
                }
            }
            for (uint32_t p : efs[i]) {
                if (std::find(efs[j].begin(), efs[j].end(), p) != efs[j].end()) {
                    IndependenceReport r;
                    r.pass = false;
                    std::ostringstream os;
                    os << "members " << member_label(w.members[i]) << " and "
                       << member_label(w.members[j]) << " are both covered by efs(" << p << ")";
                    r.detail = os.str();
                    return r;
                }
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Realization

mg::GroupSpec group_for(const GroupId& id, const gf::Field& f, uint32_t n) {
    switch (id.kind) {
        case mg::GroupKind::SL: return mg::GroupSpec::sl(f, n);
        case mg::GroupKind::GL: return mg::GroupSpec::gl(f, n);
        case mg::GroupKind::Intermediate:
            return mg::GroupSpec::intermediate(f, n, id.intermediate_index);
    }
    throw std::logic_error("group_for: unreachable");
}

mg::Mat realize_member(const mg::GroupSpec& g, const WitnessMember& m) {
    switch (m.kind) {
        case WitnessMember::Kind::Sigma: return mg::sigma_k(g, static_cast<uint32_t>(m.param));
        case WitnessMember::Kind::T: return mg::t_j(g, static_cast<uint32_t>(m.param));
        case WitnessMember::Kind::Y: return mg::y_10p(g, m.param);
        case WitnessMember::Kind::GLambda:
            return mg::g_lambda(g, m.parts[0], m.parts[1], m.parts[2]);
        case WitnessMember::Kind::Gamma: return mg::omega_singer(g);
    }
    throw std::logic_error("realize_member: unreachable");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

void require_keys(const json& obj, const std::vector<std::string>& allowed, const char* what) {
    if (!obj.is_object()) throw std::invalid_argument(std::string(what) + ": expected object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument(std::string(what) + ": unknown field '" + key + "'");
    }
}

json group_to_json(const GroupId& g) {
    switch (g.kind) {
        case mg::GroupKind::SL: return "SL";
        case mg::GroupKind::GL: return "GL";
        case mg::GroupKind::Intermediate: return json{{"intermediate_index", g.intermediate_index}};
    }
    throw std::logic_error("group_to_json: unreachable");
}

GroupId group_from_json(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "SL") return {mg::GroupKind::SL, 0};
        if (s == "GL") return {mg::GroupKind::GL, 0};
        throw std::invalid_argument("group: expected \"SL\", \"GL\" or an intermediate object");
    }
    require_keys(j, {"intermediate_index"}, "group");
    if (!j.contains("intermediate_index") || !j["intermediate_index"].is_number_unsigned())
        throw std::invalid_argument("group: intermediate_index must be a positive integer");
    return {mg::GroupKind::Intermediate, j["intermediate_index"].get<uint64_t>()};
}

uint64_t get_uint(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw std::invalid_argument(std::string(what) + ": missing or non-integral '" + key + "'");
    return j[key].get<uint64_t>();
}

std::string get_string(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string(what) + ": missing or non-string '" + key + "'");
    return j[key].get<std::string>();
}

}  // namespace

std::string certificate_to_json(const CoveringCertificate& c) {
    json out;
    out["n"] = c.n;
    out["group"] = group_to_json(c.group);
    out["method"] = c.method;
    out["classes"] = json::array();
    for (const auto& cls : c.classes) {
        if (cls.kind == ClassDescriptor::Kind::Efs)
            out["classes"].push_back({{"type", "efs"}, {"degree", cls.value}});
        else
            out["classes"].push_back({{"type", "sss"}, {"dim", cls.value}});
    }
    out["claimed_size"] = c.claimed_size;
    return out.dump(2);
}

CoveringCertificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate: invalid JSON: ") + e.what());
    }
    require_keys(j, {"n", "group", "method", "classes", "claimed_size"}, "certificate");
    CoveringCertificate c;
    c.n = static_cast<uint32_t>(get_uint(j, "n", "certificate"));
    if (!j.contains("group")) throw std::invalid_argument("certificate: missing 'group'");
    c.group = group_from_json(j["group"]);
    c.method = get_string(j, "method", "certificate");
    if (c.method != "C_p" && c.method != "C_p1p2" && c.method != "D" && c.method != "custom")
        throw std::invalid_argument("certificate: unknown method '" + c.method + "'");
    if (!j.contains("classes") || !j["classes"].is_array())
        throw std::invalid_argument("certificate: 'classes' must be an array");
    for (const auto& cls : j["classes"]) {
        std::string type = get_string(cls, "type", "class");
        if (type == "efs") {
            require_keys(cls, {"type", "degree"}, "class");
            uint32_t d = static_cast<uint32_t>(get_uint(cls, "degree", "class"));
            if (!nt::is_prime(d) || c.n % d != 0)
                throw std::invalid_argument("certificate: efs degree must be a prime dividing n");
            c.classes.push_back({ClassDescriptor::Kind::Efs, d});
        } else if (type == "sss") {
            require_keys(cls, {"type", "dim"}, "class");
            uint32_t k = static_cast<uint32_t>(get_uint(cls, "dim", "class"));
            if (k < 1 || k >= c.n)
                throw std::invalid_argument("certificate: sss dim must satisfy 1 <= k <= n-1");
            c.classes.push_back({ClassDescriptor::Kind::Sss, k});
        } else {
            throw std::invalid_argument("certificate: unknown class type '" + type + "'");
        }
    }
    for (size_t i = 0; i < c.classes.size(); ++i)
        for (size_t k = i + 1; k < c.classes.size(); ++k)
            if (c.classes[i] == c.classes[k])
                throw std::invalid_argument("certificate: duplicate class " +
                                            class_label(c.classes[i]));
    c.claimed_size = get_uint(j, "claimed_size", "certificate");
    if (c.claimed_size != c.classes.size())
        throw std::invalid_argument("certificate: claimed_size does not match class count");
    return c;
}

std::string witness_to_json(const KappaWitness& w) {
    json out;
    out["n"] = w.n;
    out["group"] = group_to_json(w.group);
    out["name"] = w.name;
    out["members"] = json::array();
    for (const auto& m : w.members) {
        switch (m.kind) {
            case WitnessMember::Kind::Sigma:
                out["members"].push_back({{"type", "sigma"}, {"k", m.param}});
                break;
            case WitnessMember::Kind::T:
                out["members"].push_back({{"type", "t"}, {"j", m.param}});
                break;
            case WitnessMember::Kind::Y:
                out["members"].push_back({{"type", "y"}, {"p", m.param}});
                break;
            case WitnessMember::Kind::GLambda:
                out["members"].push_back(
                    {{"type", "g_lambda"}, {"parts", {m.parts[0], m.parts[1], m.parts[2]}}});
                break;
            case WitnessMember::Kind::Gamma:
                out["members"].push_back({{"type", "gamma"}, {"exponent_symbol", "alpha+q-1"}});
                break;
        }
    }
    return out.dump(2);
}

KappaWitness witness_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("witness: invalid JSON: ") + e.what());
    }
    require_keys(j, {"n", "group", "name", "members"}, "witness");
    KappaWitness w;
    w.n = static_cast<uint32_t>(get_uint(j, "n", "witness"));
    if (!j.contains("group")) throw std::invalid_argument("witness: missing 'group'");
    w.group = group_from_json(j["group"]);
    w.name = get_string(j, "name", "witness");
    if (w.name != "Phi" && w.name != "PhiPlus" && w.name != "Psi" && w.name != "Omega")
        throw std::invalid_argument("witness: unknown name '" + w.name + "'");
    if (!j.contains("members") || !j["members"].is_array())
        throw std::invalid_argument("witness: 'members' must be an array");
    for (const auto& m : j["members"]) {
        std::string type = get_string(m, "type", "member");
        if (type == "sigma") {
            require_keys(m, {"type", "k"}, "member");
            uint64_t k = get_uint(m, "k", "member");
            if (k < 1 || 2 * k > w.n)
                throw std::invalid_argument("witness: sigma k must satisfy 1 <= k <= n/2");
            w.members.push_back({WitnessMember::Kind::Sigma, k, {}});
        } else if (type == "t") {
            require_keys(m, {"type", "j"}, "member");
            uint64_t jj = get_uint(m, "j", "member");
            if (jj < 1 || 4 * jj + 2 > w.n)
                throw std::invalid_argument("witness: t j must satisfy 1 <= j <= (n-2)/4");
            w.members.push_back({WitnessMember::Kind::T, jj, {}});
        } else if (type == "y") {
            require_keys(m, {"type", "p"}, "member");
            uint64_t p = get_uint(m, "p", "member");
            if (!nt::is_prime(p) || p <= 5 || w.n != 10 * p)
                throw std::invalid_argument("witness: y requires n = 10p with prime p > 5");
            w.members.push_back({WitnessMember::Kind::Y, p, {}});
        } else if (type == "g_lambda") {
            require_keys(m, {"type", "parts"}, "member");
            if (!m.contains("parts") || !m["parts"].is_array() || m["parts"].size() != 3)
                throw std::invalid_argument("witness: g_lambda parts must be a triple");
            std::array<uint32_t, 3> parts{};
            for (int i = 0; i < 3; ++i) {
                if (!m["parts"][i].is_number_unsigned())
                    throw std::invalid_argument("witness: g_lambda parts must be positive integers");
                parts[i] = m["parts"][i].get<uint32_t>();
            }
            if (parts[0] < 1 || parts[0] > parts[1] || parts[1] > parts[2] ||
                parts[0] + parts[1] + parts[2] != w.n ||
                std::gcd(parts[0], std::gcd(parts[1], parts[2])) != 1)
                throw std::invalid_argument("witness: g_lambda parts must be a sorted coprime triple summing to n");
            w.members.push_back({WitnessMember::Kind::GLambda, 0, parts});
        } else if (type == "gamma") {
            require_keys(m, {"type", "exponent_symbol"}, "member");
            if (get_string(m, "exponent_symbol", "member") != "alpha+q-1")
                throw std::invalid_argument("witness: gamma exponent_symbol must be \"alpha+q-1\"");
            w.members.push_back({WitnessMember::Kind::Gamma, 0, {}});
        } else {
            throw std::invalid_argument("witness: unknown member type '" + type + "'");
        }
    }
    return w;
}

}  // namespace lcov::cov
