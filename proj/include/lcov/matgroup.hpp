#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lcov/gf.hpp"

namespace lcov::mg {

/// Square matrix over a Field, row-major.
struct Mat {
    const gf::Field* field = nullptr;
    uint32_t n = 0;
    std::vector<uint32_t> a;  // n*n entries

    uint32_t& at(uint32_t i, uint32_t j) { return a[i * n + j]; }
    uint32_t at(uint32_t i, uint32_t j) const { return a[i * n + j]; }
};

Mat identity(const gf::Field& f, uint32_t n);
Mat zero_mat(const gf::Field& f, uint32_t n);
bool operator==(const Mat& x, const Mat& y);
bool operator!=(const Mat& x, const Mat& y);

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_inverse(const Mat& x);  // throws on singular input
/// Negative exponents go through the inverse.
Mat mat_pow(const Mat& x, int64_t k);
uint32_t mat_det(const Mat& x);

/// Companion matrix of a monic polynomial of degree >= 1.
Mat companion(const gf::Poly& f);
Mat block_diag(const std::vector<Mat>& blocks);

/// Characteristic polynomial, monic, via Hessenberg reduction.
gf::Poly char_poly(const Mat& x);

/// Rows separated by ';', entries by ','.
std::string mat_text(const Mat& x);
Mat parse_mat(const gf::Field& f, const std::string& text);

/// Multiset of (degree, multiplicity) over the distinct irreducible factors
/// of the characteristic polynomial, sorted ascending.
using CharShape = std::vector<std::pair<uint32_t, uint32_t>>;

CharShape char_shape(const Mat& x);
CharShape shape_of_factors(const std::vector<std::pair<gf::Poly, uint32_t>>& factors);

/// Dimensions of invariant subspaces forced by the shape: all subset sums
/// sum j_i * d_i with 0 <= j_i <= m_i, including 0 and n.
std::set<uint32_t> invariant_dims(const CharShape& shape, uint32_t n);

/// Exact multiplicative order of an invertible matrix, via the factored
/// annihilating exponent lcm_i(q^{d_i} - 1) * p^{ceil(log_p max_mult)}.
uint64_t element_order(const Mat& x);

enum class GroupKind { SL, GL, Intermediate };

/// A group G with SL_n(q) <= G <= GL_n(q), identified by the index
/// |GL_n(q) : G|, a divisor of q - 1 (1 for GL, q - 1 for SL).
struct GroupSpec {
    uint32_t n = 0;
    const gf::Field* field = nullptr;
    GroupKind kind = GroupKind::GL;
    uint64_t index = 1;  // |GL : G|

    static GroupSpec sl(const gf::Field& f, uint32_t n);
    static GroupSpec gl(const gf::Field& f, uint32_t n);
    static GroupSpec intermediate(const gf::Field& f, uint32_t n, uint64_t index);

    /// Exponent shift used by the witness constructions: 0 for SL and for
    /// q = 2 (where GL = SL), otherwise -|GL : G|.
    int64_t alpha() const;

    /// True iff det(m) generates a coset structure inside G, i.e. det is a
    /// power of zeta^index.
    bool contains_det(uint32_t det) const;

    std::string label() const;
};

/// Fixed multiplicative generator of GF(q)^x (least one).
uint32_t zeta(const gf::Field& f);

/// Matrix of multiplication by the least multiplicative generator of
/// GF(q^d) with norm zeta, on the power basis of GF(q^d) over GF(q).
/// Its characteristic polynomial is irreducible of degree d and its
/// determinant is zeta. Cached per (field, d).
Mat singer_gamma(const gf::Field& f, uint32_t d);

/// Power of the Singer block: multiplication by g^e, with e reduced mod
/// q^d - 1 (so negative exponents are fine).
Mat singer_gamma_pow(const gf::Field& f, uint32_t d, int64_t e);

/// diag(Gamma_k^{alpha-1}, Gamma_{n-k}) for 1 <= k <= n/2.
Mat sigma_k(const GroupSpec& g, uint32_t k);
/// diag(Gamma_j^{alpha-2}, Gamma_{j+1}, Gamma_{n-2j-1}) for 1 <= j <= (n-2)/4.
Mat t_j(const GroupSpec& g, uint32_t j);
/// diag(Gamma_p^{alpha-2}, Gamma_5, Gamma_{n-p-5}) for n = 10p, p > 5 prime.
Mat y_10p(const GroupSpec& g, uint64_t p);
/// diag(Gamma_a^{alpha-2}, Gamma_b, Gamma_c) for a three-part partition.
Mat g_lambda(const GroupSpec& g, uint32_t a, uint32_t b, uint32_t c);
/// Gamma_n^{alpha + q - 1}.
Mat omega_singer(const GroupSpec& g);

}  // namespace lcov::mg
