#include "lcov/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "lcov/numtheory.hpp"

namespace lcov::gf {
namespace {

constexpr uint64_t kMaxQ = 1u << 16;

// q^d with overflow guard against 2^63-1.
uint64_t checked_pow(uint64_t q, uint32_t d) {
    __uint128_t r = 1;
    for (uint32_t i = 0; i < d; ++i) {
        r *= q;
        if (r > static_cast<__uint128_t>(INT64_MAX))
            throw std::invalid_argument("field extension too large for order arithmetic");
    }
    return static_cast<uint64_t>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

namespace {

// Polynomial-residue arithmetic used only to bootstrap the tables.
uint32_t raw_mul(uint32_t a, uint32_t b, uint32_t p, uint32_t e,
                 const std::vector<uint32_t>& defining) {
    std::vector<uint32_t> da(e), db(e);
    for (uint32_t i = 0; i < e; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
    }
    std::vector<uint32_t> prod(2 * e - 1, 0);
    for (uint32_t i = 0; i < e; ++i)
        for (uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    // reduce by the monic defining polynomial
    for (int k = static_cast<int>(prod.size()) - 1; k >= static_cast<int>(e); --k) {
        uint32_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (uint32_t i = 0; i < e; ++i)
            prod[k - e + i] = (prod[k - e + i] + (p - defining[i] % p) * c) % p;
    }
    uint32_t out = 0;
    for (int i = static_cast<int>(e) - 1; i >= 0; --i) out = out * p + prod[i];
    return out;
}

}  // namespace

Field::Field(uint32_t p, uint32_t e) : p_(p), e_(e) {
    if (!nt::is_prime(p)) throw std::invalid_argument("Field: p must be prime");
    if (e < 1) throw std::invalid_argument("Field: e must be >= 1");
    uint64_t q = checked_pow(p, e);
    if (q > kMaxQ) throw std::invalid_argument("Field: q exceeds 2^16");
    q_ = static_cast<uint32_t>(q);

    if (e == 1) {
        defining_ = {0, 1};  // x
    } else {
        const Field& gfp = Field::get(p, 1);
        for (uint64_t k = 0;; ++k) {
            if (k >= q) throw std::logic_error("Field: no irreducible found");
            std::vector<uint32_t> c(e + 1, 0);
            uint64_t kk = k;
            for (uint32_t i = 0; i < e; ++i) {
                c[i] = static_cast<uint32_t>(kk % p);
                kk /= p;
            }
            c[e] = 1;
            if (is_irreducible(make_poly(gfp, c))) {
                defining_ = c;
                break;
            }
        }
    }

    // generator search, then discrete-log tables
    auto ord_factors = nt::factorize(q_ - 1).factors;
    auto raw_pow = [&](uint32_t a, uint64_t k) {
        uint32_t r = 1;
        while (k) {
            if (k & 1) r = raw_mul(r, a, p_, e_, defining_);
            a = raw_mul(a, a, p_, e_, defining_);
            k >>= 1;
        }
        return r;
    };
    for (uint32_t g = 1; g < q_; ++g) {
        bool ok = g != 0;
        for (const auto& [pf, ex] : ord_factors)
            if (raw_pow(g, (q_ - 1) / pf) == 1) ok = false;
        if (q_ == 2) ok = g == 1;
        if (ok) {
            generator_ = g;
            break;
        }
    }
    exp_.assign(q_ == 2 ? 2 : q_ - 1, 1);
    log_.assign(q_, 0);
    uint32_t acc = 1;
    for (uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i % (q_ - 1)] = acc;
        log_[acc] = i;
        acc = raw_mul(acc, generator_, p_, e_, defining_);
    }
}

const Field& Field::get(uint32_t p, uint32_t e) {
    static std::recursive_mutex mu;  // Field(p,e) bootstraps via get(p,1)
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Field>> registry;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, e))).first;
    return *it->second;
}

const Field& multiplicative_generator_field(uint32_t p, uint32_t e) { return Field::get(p, e); }

uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (e_ == 1) return (a + b) % p_;
    uint32_t out = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        out += (a % p_ + b % p_) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return out;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::neg(uint32_t a) const {
    if (e_ == 1) return (p_ - a) % p_;
    uint32_t out = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        out += (p_ - a % p_) % p_ * mul;
        a /= p_;
        mul *= p_;
    }
    return out;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw std::invalid_argument("Field::inv: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Field::pow(uint32_t a, int64_t k) const {
    if (a == 0) {
        if (k <= 0) throw std::invalid_argument("Field::pow: 0 to non-positive power");
        return 0;
    }
    int64_t ord = q_ - 1;
    int64_t r = (static_cast<int64_t>(log_[a]) * (k % ord)) % ord;
    if (r < 0) r += ord;
    return exp_[r];
}

// ---------------------------------------------------------------------------
// Poly

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string Poly::text() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    return os.str();
}

Poly make_poly(const Field& f, std::vector<uint32_t> coeffs) {
    for (uint32_t v : coeffs)
        if (v >= f.q()) throw std::invalid_argument("make_poly: coefficient out of range");
    Poly p{&f, std::move(coeffs)};
    p.normalize();
    return p;
}

Poly parse_poly(const Field& f, const std::string& text) {
    std::vector<uint32_t> coeffs;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) coeffs.push_back(static_cast<uint32_t>(std::stoul(tok)));
    return make_poly(f, std::move(coeffs));
}

Poly zero_poly(const Field& f) { return Poly{&f, {}}; }
Poly one_poly(const Field& f) { return Poly{&f, {1}}; }
Poly x_poly(const Field& f) { return Poly{&f, {0, 1}}; }

bool operator==(const Poly& a, const Poly& b) { return a.field == b.field && a.c == b.c; }
bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.at(i) != b.at(i)) return a.at(i) < b.at(i);
    return false;
}

Poly poly_add(const Poly& a, const Poly& b) {
    const Field& f = *a.field;
    std::vector<uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.at(i), b.at(i));
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    const Field& f = *a.field;
    std::vector<uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.at(i), b.at(i));
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    const Field& f = *a.field;
    if (a.is_zero() || b.is_zero()) return zero_poly(f);
    std::vector<uint32_t> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a.c[i], b.c[j]));
    }
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

Poly poly_scale(const Poly& a, uint32_t s) {
    const Field& f = *a.field;
    std::vector<uint32_t> c(a.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = f.mul(a.c[i], s);
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    const Field& f = *a.field;
    Poly rem = a;
    if (a.degree() < b.degree()) return {zero_poly(f), rem};
    std::vector<uint32_t> quot(a.degree() - b.degree() + 1, 0);
    uint32_t lead_inv = f.inv(b.lead());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        uint32_t coef = f.mul(rem.lead(), lead_inv);
        quot[shift] = coef;
        for (int i = 0; i <= b.degree(); ++i)
            rem.c[shift + i] = f.sub(rem.c[shift + i], f.mul(coef, b.c[i]));
        rem.normalize();
    }
    Poly q{&f, std::move(quot)};
    q.normalize();
    return {q, rem};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_monic(const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, a.field->inv(a.lead()));
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Poly poly_powmod(const Poly& base, uint64_t exp, const Poly& mod) {
    const Field& f = *base.field;
    Poly result = one_poly(f);
    Poly b = poly_mod(base, mod);
    while (exp) {
        if (exp & 1) result = poly_mod(poly_mul(result, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        exp >>= 1;
    }
    return result;
}

Poly poly_derivative(const Poly& a) {
    const Field& f = *a.field;
    if (a.degree() < 1) return zero_poly(f);
    std::vector<uint32_t> c(a.degree(), 0);
    for (int i = 1; i <= a.degree(); ++i) {
        uint32_t coef = 0;
        for (uint32_t j = 0; j < static_cast<uint32_t>(i) % f.p(); ++j) coef = f.add(coef, a.c[i]);
        c[i - 1] = coef;
    }
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

bool is_irreducible(const Poly& f0) {
    if (f0.degree() < 1) return false;
    const Field& f = *f0.field;
    Poly g = poly_monic(f0);
    uint32_t d = static_cast<uint32_t>(g.degree());
    if (d == 1) return true;
    // x^{q^d} == x mod g, and x^{q^{d/l}} - x coprime with g for prime l | d
    Poly frob = x_poly(f);
    std::vector<Poly> powers;  // powers[i] = x^{q^{i+1}} mod g
    for (uint32_t i = 0; i < d; ++i) {
        frob = poly_powmod(frob, f.q(), g);
        powers.push_back(frob);
    }
    if (powers[d - 1] != poly_mod(x_poly(f), g)) return false;
    for (const auto& [l, e] : nt::factorize(d).factors) {
        Poly diff = poly_sub(powers[d / l - 1], x_poly(f));
        if (poly_gcd(diff, g).degree() != 0) return false;
    }
    return true;
}

uint64_t count_irreducibles(uint64_t q, uint32_t d) {
    if (d < 1) throw std::invalid_argument("count_irreducibles: d must be >= 1");
    __int128 total = 0;
    for (uint32_t e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = nt::moebius(d / e);
        if (mu == 0) continue;
        __int128 pw = 1;
        for (uint32_t i = 0; i < e; ++i) pw *= q;
        total += mu * pw;
    }
    if (total < 0 || total % d != 0) throw std::logic_error("count_irreducibles: bad sum");
    return static_cast<uint64_t>(total / d);
}

namespace {

// Monic polynomials of degree m are encoded by the base-q value of their
// non-leading coefficients. Reducibles are sieved by multiplying each
// irreducible of degree a <= m/2 with every monic polynomial of degree m-a.
std::vector<std::vector<uint32_t>> monic_irreducible_codes(const Field& f, uint32_t d) {
    const uint64_t q = f.q();
    std::vector<std::vector<uint32_t>> decoded;
    if (d == 1) {
        for (uint32_t c = 0; c < q; ++c) decoded.push_back({c});
        return decoded;
    }
    uint64_t space = 1;
    for (uint32_t i = 0; i < d; ++i) {
        space *= q;
        if (space > (1ull << 27))
            throw std::invalid_argument("irreducibles: enumeration space too large");
    }
    std::vector<bool> reducible(space, false);
    for (uint32_t a = 1; 2 * a <= d; ++a) {
        auto irr_a = monic_irreducible_codes(f, a);
        uint32_t mb = d - a;
        uint64_t hb = 1;
        for (uint32_t i = 0; i < mb; ++i) hb *= q;
        std::vector<uint32_t> h(mb + 1), prod(d + 1);
        for (const auto& g : irr_a) {
            for (uint64_t hcode = 0; hcode < hb; ++hcode) {
                uint64_t t = hcode;
                for (uint32_t i = 0; i < mb; ++i) {
                    h[i] = static_cast<uint32_t>(t % q);
                    t /= q;
                }
                h[mb] = 1;
                std::fill(prod.begin(), prod.end(), 0);
                for (uint32_t i = 0; i <= a; ++i) {
                    uint32_t gi = i < a ? g[i] : 1;
                    if (gi == 0) continue;
                    for (uint32_t j = 0; j <= mb; ++j)
                        prod[i + j] = f.add(prod[i + j], f.mul(gi, h[j]));
                }
                uint64_t code = 0;
                for (int i = static_cast<int>(d) - 1; i >= 0; --i) code = code * q + prod[i];
                reducible[code] = true;
            }
        }
    }
    for (uint64_t code = 0; code < space; ++code) {
        if (reducible[code]) continue;
        std::vector<uint32_t> c(d);
        uint64_t t = code;
        for (uint32_t i = 0; i < d; ++i) {
            c[i] = static_cast<uint32_t>(t % q);
            t /= q;
        }
        decoded.push_back(std::move(c));
    }
    return decoded;
}

}  // namespace

std::vector<Poly> irreducibles(const Field& f, uint32_t d, bool exclude_x) {
    auto codes = monic_irreducible_codes(f, d);
    std::vector<Poly> out;
    out.reserve(codes.size());
    for (auto& c : codes) {
        if (exclude_x && d == 1 && c[0] == 0) continue;
        c.push_back(1);
        out.push_back(make_poly(f, std::move(c)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// p-th root of f when f' = 0, i.e. f = g(x^p) with coefficients mapped by
// c -> c^{q/p}.
Poly char_p_root(const Poly& f0) {
    const Field& f = *f0.field;
    uint32_t p = f.p();
    std::vector<uint32_t> c(f0.degree() / p + 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = f.pow(f0.at(i * p), static_cast<int64_t>(f.q() / p));
    Poly out{&f, std::move(c)};
    out.normalize();
    return out;
}

void squarefree_parts(const Poly& f0, uint32_t mult,
                      std::vector<std::pair<Poly, uint32_t>>& out) {
    const Field& f = *f0.field;
    Poly g = poly_monic(f0);
    if (g.degree() < 1) return;
    Poly der = poly_derivative(g);
    if (der.is_zero()) {
        squarefree_parts(char_p_root(g), mult * f.p(), out);
        return;
    }
    Poly c = poly_gcd(g, der);
    Poly w = poly_divmod(g, c).first;
    uint32_t i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly z = poly_divmod(w, y).first;
        if (z.degree() > 0) out.emplace_back(poly_monic(z), mult * i);
        w = std::move(y);
        c = poly_divmod(c, w).first;
        ++i;
    }
    // leftover factors all have multiplicity divisible by p, so c is a p-th power
    if (c.degree() > 0) squarefree_parts(char_p_root(c), mult * f.p(), out);
}

uint64_t ext_card(const Field& f, uint32_t d) {
    __uint128_t r = 1;
    for (uint32_t i = 0; i < d; ++i) {
        r *= f.q();
        if (r > static_cast<__uint128_t>(INT64_MAX))
            throw std::invalid_argument("factor: splitting field too large");
    }
    return static_cast<uint64_t>(r);
}

// Deterministic candidate sequence for equal-degree splitting: monic-free
// polynomials enumerated by base-q digits in increasing degree.
Poly edf_candidate(const Field& f, uint64_t idx) {
    std::vector<uint32_t> c;
    while (idx) {
        c.push_back(static_cast<uint32_t>(idx % f.q()));
        idx /= f.q();
    }
    Poly p{&f, std::move(c)};
    p.normalize();
    return p;
}

void equal_degree_split(const Poly& h, uint32_t d, std::vector<Poly>& out) {
    const Field& f = *h.field;
    if (h.degree() == static_cast<int>(d)) {
        out.push_back(poly_monic(h));
        return;
    }
    uint64_t Q = ext_card(f, d);
    uint64_t limit = 64ull * f.q() * (h.degree() + 1);
    for (uint64_t idx = f.q(); idx < f.q() + limit; ++idx) {
        Poly t = edf_candidate(f, idx);
        Poly split;
        if (f.p() == 2) {
            // trace map to GF(2)
            uint32_t bits = 0;
            uint64_t qq = Q;
            while (qq > 1) {
                qq >>= 1;
                ++bits;
            }
            Poly acc = poly_mod(t, h);
            Poly term = acc;
            for (uint32_t i = 1; i < bits; ++i) {
                term = poly_mod(poly_mul(term, term), h);
                acc = poly_add(acc, term);
            }
            split = poly_gcd(acc, h);
        } else {
            Poly pw = poly_powmod(t, (Q - 1) / 2, h);
            split = poly_gcd(poly_sub(pw, one_poly(f)), h);
        }
        if (split.degree() > 0 && split.degree() < h.degree()) {
            equal_degree_split(split, d, out);
            equal_degree_split(poly_divmod(h, split).first, d, out);
            return;
        }
    }
    // exhaustive fallback: trial-divide by the enumerated irreducibles
    Poly rest = poly_monic(h);
    for (const Poly& g : irreducibles(f, d, false)) {
        if (rest.degree() < static_cast<int>(d)) break;
        if (poly_mod(rest, g).is_zero()) {
            out.push_back(g);
            rest = poly_divmod(rest, g).first;
        }
    }
    if (rest.degree() > 0) throw std::logic_error("equal_degree_split: incomplete split");
}

}  // namespace

std::vector<std::pair<Poly, uint32_t>> factor(const Poly& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    const Field& f = *f0.field;
    std::vector<std::pair<Poly, uint32_t>> parts;
    squarefree_parts(f0, 1, parts);
    std::vector<std::pair<Poly, uint32_t>> out;
    for (const auto& [part, mult] : parts) {
        // distinct-degree splitting of the squarefree part
        Poly g = part;
        Poly w = poly_mod(x_poly(f), g);
        for (uint32_t d = 1; g.degree() > 0 && 2 * d <= static_cast<uint32_t>(g.degree()); ++d) {
            w = poly_powmod(w, f.q(), g);
            Poly e = poly_gcd(poly_sub(w, x_poly(f)), g);
            if (e.degree() > 0) {
                std::vector<Poly> irr;
                equal_degree_split(e, d, irr);
                for (auto& ip : irr) out.emplace_back(std::move(ip), mult);
                g = poly_divmod(g, e).first;
                w = poly_mod(w, g);
            }
        }
        if (g.degree() > 0) out.emplace_back(poly_monic(g), mult);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

// ---------------------------------------------------------------------------
// ExtField

ExtField::ExtField(const Field& base, uint32_t d) : base_(&base), d_(d) {
    if (d < 1) throw std::invalid_argument("ExtField: degree must be >= 1");
    card_ = checked_pow(base.q(), d);
    // lexicographically least monic irreducible of degree d
    for (uint64_t k = 0;; ++k) {
        if (k >= card_) throw std::logic_error("ExtField: no irreducible found");
        std::vector<uint32_t> c(d + 1, 0);
        uint64_t kk = k;
        for (uint32_t i = 0; i < d; ++i) {
            c[i] = static_cast<uint32_t>(kk % base.q());
            kk /= base.q();
        }
        c[d] = 1;
        Poly cand = make_poly(base, c);
        if (is_irreducible(cand)) {
            defining_ = cand;
            break;
        }
    }
    order_factors_ = nt::factorize64(card_ - 1).factors;
}

ExtField::Elt ExtField::zero() const { return Elt(d_, 0); }

ExtField::Elt ExtField::one() const {
    Elt e(d_, 0);
    e[0] = 1;
    return e;
}

ExtField::Elt ExtField::from_base(uint32_t a) const {
    Elt e(d_, 0);
    e[0] = a;
    return e;
}

ExtField::Elt ExtField::gen_x() const {
    Elt e(d_, 0);
    if (d_ == 1)
        e[0] = 0;
    else
        e[1] = 1;
    return e;
}

bool ExtField::is_zero(const Elt& a) const {
    for (uint32_t v : a)
        if (v) return false;
    return true;
}

ExtField::Elt ExtField::add(const Elt& a, const Elt& b) const {
    Elt out(d_);
    for (uint32_t i = 0; i < d_; ++i) out[i] = base_->add(a[i], b[i]);
    return out;
}

ExtField::Elt ExtField::sub(const Elt& a, const Elt& b) const {
    Elt out(d_);
    for (uint32_t i = 0; i < d_; ++i) out[i] = base_->sub(a[i], b[i]);
    return out;
}

ExtField::Elt ExtField::mul(const Elt& a, const Elt& b) const {
    const Field& f = *base_;
    std::vector<uint32_t> prod(2 * d_ - 1, 0);
    for (uint32_t i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; j < d_; ++j)
            prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
    }
    for (int k = static_cast<int>(prod.size()) - 1; k >= static_cast<int>(d_); --k) {
        uint32_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (uint32_t i = 0; i < d_; ++i)
            prod[k - d_ + i] = f.sub(prod[k - d_ + i], f.mul(c, defining_.at(i)));
    }
    prod.resize(d_);
    return prod;
}

ExtField::Elt ExtField::inv(const Elt& a) const {
    if (is_zero(a)) throw std::invalid_argument("ExtField::inv: zero has no inverse");
    // extended Euclid against the defining polynomial
    const Field& f = *base_;
    Poly r0 = defining_;
    Poly r1 = make_poly(f, std::vector<uint32_t>(a.begin(), a.end()));
    Poly s0 = zero_poly(f), s1 = one_poly(f);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant gcd
    Poly invp = poly_scale(s0, f.inv(r0.at(0)));
    Elt out(d_, 0);
    for (uint32_t i = 0; i < d_ && i < invp.c.size(); ++i) out[i] = invp.c[i];
    return out;
}

ExtField::Elt ExtField::pow(const Elt& a, uint64_t k) const {
    Elt result = one();
    Elt b = a;
    while (k) {
        if (k & 1) result = mul(result, b);
        b = mul(b, b);
        k >>= 1;
    }
    return result;
}

ExtField::Elt ExtField::element_at(uint64_t index) const {
    Elt e(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        e[i] = static_cast<uint32_t>(index % base_->q());
        index /= base_->q();
    }
    return e;
}

uint64_t ExtField::index_of(const Elt& a) const {
    uint64_t idx = 0;
    for (int i = static_cast<int>(d_) - 1; i >= 0; --i) idx = idx * base_->q() + a[i];
    return idx;
}

bool ExtField::is_mult_generator(const Elt& a) const {
    if (is_zero(a)) return false;
    for (const auto& [pf, e] : order_factors_)
        if (pow(a, (card_ - 1) / pf) == one()) return false;
    return true;
}

uint32_t ExtField::norm(const Elt& a) const {
    if (is_zero(a)) return 0;
    uint64_t exp = (card_ - 1) / (base_->q() - 1);
    Elt n = pow(a, exp);
    for (uint32_t i = 1; i < d_; ++i)
        if (n[i] != 0) throw std::logic_error("ExtField::norm: value not in base field");
    return n[0];
}

Poly ExtField::minimal_polynomial(const Elt& a) const {
    // product of (X - conj) over the Frobenius orbit of a
    std::vector<Elt> conj;
    Elt c = a;
    do {
        conj.push_back(c);
        c = pow(c, base_->q());
    } while (!(c == a));
    std::vector<Elt> coeffs{one()};
    for (const Elt& r : conj) {
        std::vector<Elt> next(coeffs.size() + 1, zero());
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = add(next[i + 1], coeffs[i]);
            next[i] = sub(next[i], mul(r, coeffs[i]));
        }
        coeffs = std::move(next);
    }
    std::vector<uint32_t> out(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        for (uint32_t j = 1; j < d_; ++j)
            if (coeffs[i][j] != 0)
                throw std::logic_error("minimal_polynomial: coefficient not in base field");
        out[i] = coeffs[i][0];
    }
    return make_poly(*base_, std::move(out));
}

ExtField::Elt ExtField::generator_with_norm(uint32_t target) const {
    for (uint64_t idx = 1; idx < card_; ++idx) {
        Elt e = element_at(idx);
        if (is_mult_generator(e) && norm(e) == target) return e;
    }
    throw std::logic_error("generator_with_norm: exhausted field without a match");
}

}  // namespace lcov::gf
