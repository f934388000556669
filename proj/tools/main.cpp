#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lcov/bounds.hpp"
#include "lcov/covering.hpp"
#include "lcov/matgroup.hpp"
#include "lcov/numtheory.hpp"
#include "lcov/verify.hpp"

using namespace lcov;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

cov::GroupId parse_group(const std::string& s) {
    if (s == "GL") return {mg::GroupKind::GL, 0};
    if (s == "SL") return {mg::GroupKind::SL, 0};
    try {
        size_t pos = 0;
        unsigned long idx = std::stoul(s, &pos);
        if (pos == s.size() && idx > 0) return {mg::GroupKind::Intermediate, idx};
    } catch (...) {
    }
    throw std::invalid_argument("--group must be GL, SL, or a positive subgroup index");
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text << "\n";
}

int cmd_bounds(uint32_t n, bool as_json) {
    auto r = bnd::report(n);
    if (as_json) {
        std::cout << bnd::report_to_json(r) << "\n";
        return kOk;
    }
    std::cout << "n = " << r.n << "\n";
    if (r.exact)
        std::cout << "exact: " << r.exact->value << "  (" << r.exact->provenance << ")\n";
    else
        std::cout << "exact: unknown\n";
    std::cout << "interval: [" << r.interval[0] << ", " << r.interval[1] << "]\n";
    auto print = [](const char* head, const std::vector<bnd::Bound>& bs) {
        if (bs.empty()) return;
        std::cout << head << ":\n";
        for (const auto& b : bs)
            std::cout << "  " << b.value << "  (" << b.provenance << ")\n";
    };
    print("kappa lower bounds", r.kappa_lower);
    print("gamma lower bounds", r.gamma_lower);
    print("gamma upper bounds", r.gamma_upper);
    return kOk;
}

int cmd_cover(uint32_t n, const std::string& method, const std::string& out_path) {
    cov::CoveringCertificate cert;
    if (method == "single") {
        uint64_t best_p = 0;
        uint64_t best = UINT64_MAX;
        for (const auto& [p, e] : nt::factorize(n).factors) {
            if (cov::size_C_p(n, p) < best) {
                best = cov::size_C_p(n, p);
                best_p = p;
            }
        }
        if (best_p == 0) throw std::invalid_argument("cover: n must be at least 2");
        cert = cov::build_C_p(n, best_p);
    } else if (method == "two-primes") {
        auto f = nt::factorize(n).factors;
        if (f.size() < 2)
            throw std::invalid_argument("cover: two-primes needs two distinct prime divisors");
        cert = cov::build_C_p1p2(n, f[0].first, f[1].first);
    } else if (method == "D") {
        cert = cov::build_D(n);
    } else {
        throw std::invalid_argument("cover: method must be single, two-primes, or D");
    }
    std::cout << "size: " << cert.claimed_size << "\n";
    write_output(cov::certificate_to_json(cert), out_path);
    return kOk;
}

int cmd_verify(const std::string& path, uint64_t q, bool elements, bool probe) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open certificate file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    auto cert = cov::certificate_from_json(buf.str());
    auto rep = elements ? vfy::exhaustive_element_check(cert, q) : vfy::check_cover(cert, q);
    std::cout << vfy::verify_report_to_json(rep) << "\n";
    if (probe) {
        auto pr = vfy::check_cover_minimality_probe(cert, q);
        std::cout << "minimality probe:\n";
        for (const auto& [label, needed] : pr.needed)
            std::cout << "  " << label << ": " << (needed ? "needed" : "redundant at this q")
                      << "\n";
    }
    return rep.uncovered.empty() ? kOk : kVerifyFail;
}

int cmd_witness(uint32_t n, const std::string& set, uint64_t q, bool emit_matrices,
                const cov::GroupId& group) {
    cov::KappaWitness w;
    if (set == "phi")
        w = cov::build_Phi(n);
    else if (set == "phi-plus")
        w = cov::build_PhiPlus(n);
    else if (set == "psi")
        w = cov::build_Psi(n);
    else if (set == "omega")
        w = cov::build_Omega(n);
    else
        throw std::invalid_argument("witness: set must be phi, phi-plus, psi, or omega");
    w.group = group;
    std::cout << cov::witness_to_json(w) << "\n";
    auto check = cov::structural_independence_check(w);
    if (check.pass)
        std::cout << "structural independence: pass\n";
    else
        std::cout << "structural independence: FAIL (" << check.detail << ")\n";
    if (emit_matrices) {
        if (q == 0) throw std::invalid_argument("witness: --emit-matrices requires --q");
        auto g = cov::group_for(group, vfy::field_from_order(q), n);
        for (const auto& m : w.members) {
            auto x = cov::realize_member(g, m);
            std::cout << cov::member_label(m) << ": " << mg::mat_text(x) << "\n";
        }
    }
    return kOk;
}

int cmd_element(uint32_t n, uint64_t q, const std::string& type, uint64_t param,
                std::vector<uint32_t> parts, const cov::GroupId& group) {
    cov::WitnessMember m;
    if (type == "sigma")
        m = {cov::WitnessMember::Kind::Sigma, param, {}};
    else if (type == "t")
        m = {cov::WitnessMember::Kind::T, param, {}};
    else if (type == "y")
        m = {cov::WitnessMember::Kind::Y, param, {}};
    else if (type == "g-lambda") {
        if (parts.size() != 3)
            throw std::invalid_argument("element: g-lambda needs --parts a,b,c");
        m = {cov::WitnessMember::Kind::GLambda, 0, {parts[0], parts[1], parts[2]}};
    } else if (type == "gamma")
        m = {cov::WitnessMember::Kind::Gamma, 0, {}};
    else
        throw std::invalid_argument("element: type must be sigma, t, y, g-lambda, or gamma");
    auto g = cov::group_for(group, vfy::field_from_order(q), n);
    auto x = cov::realize_member(g, m);
    std::cout << mg::mat_text(x) << "\n";
    std::cout << "det: " << mg::mat_det(x) << "\n";
    std::cout << "order: " << mg::element_order(x) << "\n";
    auto shape = mg::char_shape(x);
    std::cout << "shape:";
    for (const auto& [d, mult] : shape) std::cout << " (" << d << "," << mult << ")";
    std::cout << "\n";
    return kOk;
}

int cmd_partitions(uint32_t n) {
    std::cout << "f(" << n << ") = " << nt::f_three_part(n) << "\n";
    if (n >= 3) {
        std::cout << "g(" << n << ") = " << nt::g_coprime_three_part(n) << "\n";
        std::cout << "coprime triples:\n";
        for (const auto& t : nt::enumerate_P(n))
            std::cout << "  (" << t[0] << "," << t[1] << "," << t[2] << ")\n";
    }
    return kOk;
}

int cmd_table(uint32_t from, uint32_t to, const std::string& format) {
    if (from < 2 || to < from) throw std::invalid_argument("table: need 2 <= from <= to");
    if (format != "csv" && format != "md")
        throw std::invalid_argument("table: format must be csv or md");
    const bool md = format == "md";
    if (md) {
        std::cout << "| n | exact | lo | hi | provenance_lo | provenance_hi |\n";
        std::cout << "|---|-------|----|----|---------------|---------------|\n";
    } else {
        std::cout << "n,exact,lo,hi,provenance_lo,provenance_hi\n";
    }
    for (uint32_t n = from; n <= to; ++n) {
        auto r = bnd::report(n);
        std::string prov_lo, prov_hi, exact;
        if (r.exact) {
            exact = std::to_string(r.exact->value);
            prov_lo = prov_hi = r.exact->provenance;
        } else {
            for (const auto& b : r.kappa_lower)
                if (b.value == r.interval[0]) prov_lo = b.provenance;
            for (const auto& b : r.gamma_lower)
                if (b.value == r.interval[0]) prov_lo = b.provenance;
            for (const auto& b : r.gamma_upper)
                if (b.value == r.interval[1]) prov_hi = b.provenance;
        }
        if (md)
            std::cout << "| " << n << " | " << exact << " | " << r.interval[0] << " | "
                      << r.interval[1] << " | " << prov_lo << " | " << prov_hi << " |\n";
        else
            std::cout << n << "," << exact << "," << r.interval[0] << "," << r.interval[1] << ","
                      << prov_lo << "," << prov_hi << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds, coverings and independence witnesses for linear groups"};
    app.require_subcommand(1);

    uint32_t n = 0;
    uint64_t q = 0;
    bool as_json = false, elements = false, probe = false, emit_matrices = false;
    std::string method = "single", out_path, cert_path, set_name, group_str = "GL";
    std::string type, format = "csv";
    uint64_t param = 0;
    std::vector<uint32_t> parts;
    uint32_t from = 2, to = 2;

    auto* b = app.add_subcommand("bounds", "bounds report for dimension n");
    b->add_option("--n", n, "dimension")->required();
    b->add_flag("--json", as_json, "emit JSON");

    auto* c = app.add_subcommand("cover", "emit a covering certificate");
    c->add_option("--n", n, "dimension")->required();
    c->add_option("--method", method, "single | two-primes | D");
    c->add_option("--out", out_path, "output file (default stdout)");

    auto* v = app.add_subcommand("verify", "verify a covering certificate");
    v->add_option("--certificate", cert_path, "certificate JSON file")->required();
    v->add_option("--q", q, "field size (prime power)")->required();
    v->add_flag("--elements", elements, "element-level exhaustive check");
    v->add_flag("--probe-minimality", probe, "report per-class necessity");

    auto* w = app.add_subcommand("witness", "emit an independence witness");
    w->add_option("--n", n, "dimension")->required();
    w->add_option("--set", set_name, "phi | phi-plus | psi | omega")->required();
    w->add_option("--q", q, "field size for matrix emission");
    w->add_option("--group", group_str, "GL | SL | subgroup index");
    w->add_flag("--emit-matrices", emit_matrices, "print each member as a matrix");

    auto* e = app.add_subcommand("element", "print one witness element as a matrix");
    e->add_option("--n", n, "dimension")->required();
    e->add_option("--q", q, "field size (prime power)")->required();
    e->add_option("--type", type, "sigma | t | y | g-lambda | gamma")->required();
    e->add_option("--param", param, "k / j / p parameter");
    e->add_option("--parts", parts, "a,b,c for g-lambda")->delimiter(',');
    e->add_option("--group", group_str, "GL | SL | subgroup index");

    auto* p = app.add_subcommand("partitions", "three-part partition counts");
    p->add_option("--n", n, "target value")->required();

    auto* t = app.add_subcommand("table", "bounds table over a range");
    t->add_option("--from", from, "first dimension")->required();
    t->add_option("--to", to, "last dimension")->required();
    t->add_option("--format", format, "csv | md");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (b->parsed()) return cmd_bounds(n, as_json);
        if (c->parsed()) return cmd_cover(n, method, out_path);
        if (v->parsed()) return cmd_verify(cert_path, q, elements, probe);
        if (w->parsed()) return cmd_witness(n, set_name, q, emit_matrices, parse_group(group_str));
        if (e->parsed()) return cmd_element(n, q, type, param, parts, parse_group(group_str));
        if (p->parsed()) return cmd_partitions(n);
        if (t->parsed()) return cmd_table(from, to, format);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
