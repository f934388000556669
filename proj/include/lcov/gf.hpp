#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lcov::gf {

/// GF(p^e) with q = p^e <= 2^16. Elements are the canonical integers
/// 0..q-1, the base-p digit encoding of the polynomial residue. The
/// defining polynomial is the lexicographically least monic irreducible of
/// degree e over GF(p), coefficients enumerated low-to-high.
class Field {
public:
    static const Field& get(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& defining() const { return defining_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, int64_t k) const;

    /// Least element (in canonical ordering) of multiplicative order q-1.
    uint32_t generator() const { return generator_; }

private:
    Field(uint32_t p, uint32_t e);

    uint32_t p_, e_, q_;
    std::vector<uint32_t> defining_;          // c_0..c_e over GF(p), monic
    std::vector<uint32_t> exp_, log_;         // discrete log tables
    uint32_t generator_ = 0;
};

const Field& multiplicative_generator_field(uint32_t p, uint32_t e);
inline uint32_t multiplicative_generator(const Field& f) { return f.generator(); }

/// Polynomial over a Field, coefficients low-to-high with no trailing zeros.
struct Poly {
    const Field* field = nullptr;
    std::vector<uint32_t> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    uint32_t at(size_t i) const { return i < c.size() ? c[i] : 0; }
    uint32_t lead() const { return c.back(); }
    void normalize();

    /// Coefficients low-to-high as comma-separated integers, e.g. "1,1,0,1".
    std::string text() const;
};

Poly make_poly(const Field& f, std::vector<uint32_t> coeffs);
Poly parse_poly(const Field& f, const std::string& text);
Poly zero_poly(const Field& f);
Poly one_poly(const Field& f);
Poly x_poly(const Field& f);

bool operator==(const Poly& a, const Poly& b);
bool operator!=(const Poly& a, const Poly& b);
/// Ordering by degree, then lexicographic on coefficients high-to-low.
bool poly_less(const Poly& a, const Poly& b);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, uint32_t s);
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_powmod(const Poly& base, uint64_t exp, const Poly& mod);
Poly poly_monic(const Poly& a);
Poly poly_derivative(const Poly& a);

bool is_irreducible(const Poly& f);

/// All monic irreducibles of degree d over the field, in lex order
/// (constant coefficient fastest). With exclude_x, the polynomial x is
/// omitted (relevant only for d = 1).
std::vector<Poly> irreducibles(const Field& f, uint32_t d, bool exclude_x);

/// (1/d) sum_{e | d} mu(d/e) q^e.
uint64_t count_irreducibles(uint64_t q, uint32_t d);

/// Complete factorization into monic irreducibles with multiplicities,
/// ordered by degree then lexicographically. Rejects the zero polynomial.
std::vector<std::pair<Poly, uint32_t>> factor(const Poly& f);

/// GF(q^d) presented as GF(q)[x]/(h) with h the lexicographically least
/// monic irreducible of degree d. Elements are coefficient vectors of
/// length d over the base field.
class ExtField {
public:
    using Elt = std::vector<uint32_t>;

    ExtField(const Field& base, uint32_t d);

    const Field& base() const { return *base_; }
    uint32_t degree() const { return d_; }
    const Poly& defining() const { return defining_; }
    uint64_t card() const { return card_; }       // q^d
    uint64_t unit_order() const { return card_ - 1; }

    Elt zero() const;
    Elt one() const;
    Elt from_base(uint32_t a) const;
    Elt gen_x() const;
    bool is_zero(const Elt& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inv(const Elt& a) const;
    Elt pow(const Elt& a, uint64_t k) const;

    /// Canonical ordering: base-q digits, coefficient 0 least significant.
    Elt element_at(uint64_t index) const;
    uint64_t index_of(const Elt& a) const;

    bool is_mult_generator(const Elt& a) const;

    /// x^{(q^d-1)/(q-1)}, an element of the base field; norm(0) = 0.
    uint32_t norm(const Elt& a) const;

    /// Monic polynomial over the base field of least degree with a as root.
    Poly minimal_polynomial(const Elt& a) const;

    /// Least element (canonical ordering) of multiplicative order q^d - 1
    /// whose norm equals target.
    Elt generator_with_norm(uint32_t target) const;

private:
    const Field* base_;
    uint32_t d_;
    Poly defining_;
    uint64_t card_;
    std::vector<std::pair<uint64_t, uint32_t>> order_factors_;  // of q^d - 1
};

}  // namespace lcov::gf
