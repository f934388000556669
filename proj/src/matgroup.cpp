#include "lcov/matgroup.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "lcov/numtheory.hpp"

namespace lcov::mg {

using gf::Field;
using gf::Poly;

Mat identity(const Field& f, uint32_t n) {
    Mat m{&f, n, std::vector<uint32_t>(n * n, 0)};
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat zero_mat(const Field& f, uint32_t n) { return Mat{&f, n, std::vector<uint32_t>(n * n, 0)}; }

bool operator==(const Mat& x, const Mat& y) {
    return x.field == y.field && x.n == y.n && x.a == y.a;
}
bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.field != y.field || x.n != y.n) throw std::invalid_argument("mat_mul: shape mismatch");
    const Field& f = *x.field;
    uint32_t n = x.n;
    Mat out = zero_mat(f, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t k = 0; k < n; ++k) {
            uint32_t v = x.at(i, k);
            if (v == 0) continue;
            for (uint32_t j = 0; j < n; ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(v, y.at(k, j)));
        }
    return out;
}

Mat mat_inverse(const Mat& x) {
    const Field& f = *x.field;
    uint32_t n = x.n;
    Mat a = x;
    Mat inv = identity(f, n);
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) throw std::invalid_argument("mat_inverse: singular matrix");
        if (piv != col)
            for (uint32_t j = 0; j < n; ++j) {
                std::swap(a.a[piv * n + j], a.a[col * n + j]);
                std::swap(inv.a[piv * n + j], inv.a[col * n + j]);
            }
        uint32_t s = f.inv(a.at(col, col));
        for (uint32_t j = 0; j < n; ++j) {
            a.at(col, j) = f.mul(a.at(col, j), s);
            inv.at(col, j) = f.mul(inv.at(col, j), s);
        }
        for (uint32_t r = 0; r < n; ++r) {
            if (r == col) continue;
            uint32_t v = a.at(r, col);
            if (v == 0) continue;
            for (uint32_t j = 0; j < n; ++j) {
                a.at(r, j) = f.sub(a.at(r, j), f.mul(v, a.at(col, j)));
                inv.at(r, j) = f.sub(inv.at(r, j), f.mul(v, inv.at(col, j)));
            }
        }
    }
    return inv;
}

namespace {

Mat mat_pow_u64(const Mat& x, uint64_t k) {
    Mat result = identity(*x.field, x.n);
    Mat b = x;
    while (k) {
        if (k & 1) result = mat_mul(result, b);
        b = mat_mul(b, b);
        k >>= 1;
    }
    return result;
}

}  // namespace

Mat mat_pow(const Mat& x, int64_t k) {
    if (k >= 0) return mat_pow_u64(x, static_cast<uint64_t>(k));
    return mat_pow_u64(mat_inverse(x), static_cast<uint64_t>(-k));
}

uint32_t mat_det(const Mat& x) {
    const Field& f = *x.field;
    uint32_t n = x.n;
    Mat a = x;
    uint32_t det = 1;
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (uint32_t j = 0; j < n; ++j) std::swap(a.a[piv * n + j], a.a[col * n + j]);
            det = f.neg(det);
        }
        det = f.mul(det, a.at(col, col));
        uint32_t s = f.inv(a.at(col, col));
        for (uint32_t r = col + 1; r < n; ++r) {
            uint32_t v = f.mul(a.at(r, col), s);
            if (v == 0) continue;
            for (uint32_t j = col; j < n; ++j)
                a.at(r, j) = f.sub(a.at(r, j), f.mul(v, a.at(col, j)));
        }
    }
    return det;
}

Mat companion(const Poly& p) {
    if (p.degree() < 1 || p.lead() != 1)
        throw std::invalid_argument("companion: need monic polynomial of degree >= 1");
    const Field& f = *p.field;
    uint32_t n = static_cast<uint32_t>(p.degree());
    Mat m = zero_mat(f, n);
    for (uint32_t i = 1; i < n; ++i) m.at(i, i - 1) = 1;
    for (uint32_t i = 0; i < n; ++i) m.at(i, n - 1) = f.neg(p.at(i));
    return m;
}

Mat block_diag(const std::vector<Mat>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diag: no blocks");
    const Field& f = *blocks.front().field;
    uint32_t n = 0;
    for (const Mat& b : blocks) {
        if (b.field != &f) throw std::invalid_argument("block_diag: mixed fields");
        n += b.n;
    }
    Mat out = zero_mat(f, n);
    uint32_t off = 0;
    for (const Mat& b : blocks) {
        for (uint32_t i = 0; i < b.n; ++i)
            for (uint32_t j = 0; j < b.n; ++j) out.at(off + i, off + j) = b.at(i, j);
        off += b.n;
    }
    return out;
}

Poly char_poly(const Mat& x) {
    const Field& f = *x.field;
    uint32_t n = x.n;
    if (n == 0) return gf::one_poly(f);
    Mat h = x;
    // similarity reduction to upper Hessenberg form
    for (uint32_t col = 0; col + 2 < n; ++col) {
        uint32_t piv = col + 1;
        while (piv < n && h.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != col + 1) {
            for (uint32_t j = 0; j < n; ++j) std::swap(h.a[piv * n + j], h.a[(col + 1) * n + j]);
            for (uint32_t i = 0; i < n; ++i) std::swap(h.a[i * n + piv], h.a[i * n + col + 1]);
        }
        uint32_t inv = f.inv(h.at(col + 1, col));
        for (uint32_t r = col + 2; r < n; ++r) {
            uint32_t v = f.mul(h.at(r, col), inv);
            if (v == 0) continue;
            for (uint32_t j = 0; j < n; ++j) h.at(r, j) = f.sub(h.at(r, j), f.mul(v, h.at(col + 1, j)));
            for (uint32_t i = 0; i < n; ++i)
                h.at(i, col + 1) = f.add(h.at(i, col + 1), f.mul(v, h.at(i, r)));
        }
    }
    // leading-principal-minor recurrence for Hessenberg matrices
    std::vector<Poly> p(n + 1, gf::one_poly(f));
    for (uint32_t k = 1; k <= n; ++k) {
        Poly xm = gf::poly_sub(gf::x_poly(f), gf::make_poly(f, {h.at(k - 1, k - 1)}));
        Poly acc = gf::poly_mul(xm, p[k - 1]);
        uint32_t sub = 1;  // running product of subdiagonal entries
        for (uint32_t i = 2; i <= k; ++i) {
            sub = f.mul(sub, h.at(k - i + 1, k - i));
            if (sub == 0) break;
            uint32_t coef = f.mul(h.at(k - i, k - 1), sub);
            if (coef == 0) continue;
            acc = gf::poly_sub(acc, gf::poly_scale(p[k - i], coef));
        }
        p[k] = std::move(acc);
    }
    return p[n];
}

std::string mat_text(const Mat& x) {
    std::ostringstream os;
    for (uint32_t i = 0; i < x.n; ++i) {
        if (i) os << ';';
        for (uint32_t j = 0; j < x.n; ++j) {
            if (j) os << ',';
            os << x.at(i, j);
        }
    }
    return os.str();
}

Mat parse_mat(const Field& f, const std::string& text) {
    std::vector<std::vector<uint32_t>> rows;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row, ';')) {
        std::vector<uint32_t> vals;
        std::istringstream rs(row);
        std::string tok;
        while (std::getline(rs, tok, ',')) vals.push_back(static_cast<uint32_t>(std::stoul(tok)));
        rows.push_back(std::move(vals));
    }
    uint32_t n = static_cast<uint32_t>(rows.size());
    Mat m = zero_mat(f, n);
    for (uint32_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("parse_mat: ragged rows");
        for (uint32_t j = 0; j < n; ++j) {
            if (rows[i][j] >= f.q()) throw std::invalid_argument("parse_mat: entry out of range");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

CharShape shape_of_factors(const std::vector<std::pair<Poly, uint32_t>>& factors) {
    CharShape shape;
    for (const auto& [g, m] : factors)
        shape.emplace_back(static_cast<uint32_t>(g.degree()), m);
    std::sort(shape.begin(), shape.end());
    return shape;
}

CharShape char_shape(const Mat& x) { return shape_of_factors(gf::factor(char_poly(x))); }

std::set<uint32_t> invariant_dims(const CharShape& shape, uint32_t n) {
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    for (const auto& [d, m] : shape) {
        std::vector<bool> next = reach;
        for (uint32_t s = 0; s <= n; ++s) {
            if (!reach[s]) continue;
            for (uint32_t j = 1; j <= m && s + j * d <= n; ++j) next[s + j * d] = true;
        }
        reach = std::move(next);
    }
    std::set<uint32_t> dims;
    for (uint32_t s = 0; s <= n; ++s)
        if (reach[s]) dims.insert(s);
    if (!dims.count(n)) throw std::logic_error("invariant_dims: shape does not sum to n");
    return dims;
}

uint64_t element_order(const Mat& x) {
    const Field& f = *x.field;
    auto factors = gf::factor(char_poly(x));
    __uint128_t E = 1;
    uint32_t max_mult = 0;
    for (const auto& [g, m] : factors) {
        if (g.degree() == 1 && g.at(0) == 0)
            throw std::invalid_argument("element_order: singular matrix");
        uint64_t sub = 1;
        for (int i = 0; i < g.degree(); ++i) sub *= f.q();
        sub -= 1;
        max_mult = std::max(max_mult, m);
        uint64_t cur = static_cast<uint64_t>(E);
        E = static_cast<__uint128_t>(cur / std::gcd(cur, sub)) * sub;
        if (E > UINT64_MAX) throw std::overflow_error("element_order: exponent overflow");
    }
    uint64_t pe = 1;
    while (pe < max_mult) pe *= f.p();
    E *= pe;
    if (E > UINT64_MAX) throw std::overflow_error("element_order: exponent overflow");
    uint64_t ord = static_cast<uint64_t>(E);
    Mat id = identity(f, x.n);
    if (mat_pow_u64(x, ord) != id) throw std::logic_error("element_order: exponent not annihilating");
    for (const auto& [pr, e] : nt::factorize64(ord).factors) {
        for (uint32_t i = 0; i < e; ++i) {
            if (ord % pr) break;
            if (mat_pow_u64(x, ord / pr) == id)
                ord /= pr;
            else
                break;
        }
    }
    return ord;
}

// ---------------------------------------------------------------------------
// Groups and Singer constructions

GroupSpec GroupSpec::sl(const Field& f, uint32_t n) {
    return GroupSpec{n, &f, GroupKind::SL, f.q() - 1u};
}
GroupSpec GroupSpec::gl(const Field& f, uint32_t n) {
    return GroupSpec{n, &f, GroupKind::GL, 1};
}
GroupSpec GroupSpec::intermediate(const Field& f, uint32_t n, uint64_t index) {
    if (index <= 1 || index >= f.q() - 1u || (f.q() - 1u) % index != 0)
        throw std::invalid_argument(
            "GroupSpec: intermediate index must be a proper divisor of q - 1 with 1 < index < q - 1");
    return GroupSpec{n, &f, GroupKind::Intermediate, index};
}

int64_t GroupSpec::alpha() const {
    if (kind == GroupKind::SL || field->q() == 2) return 0;
    return -static_cast<int64_t>(index);
}

bool GroupSpec::contains_det(uint32_t det) const {
    if (det == 0) return false;
    const Field& f = *field;
    uint64_t step = kind == GroupKind::SL ? f.q() - 1u : index;
    uint32_t gen = f.pow(f.generator(), static_cast<int64_t>(step));
    uint32_t x = 1;
    uint64_t ord = (f.q() - 1u) / step;
    for (uint64_t i = 0; i < ord; ++i) {
        if (x == det) return true;
        x = f.mul(x, gen);
    }
    return false;
}

std::string GroupSpec::label() const {
    std::ostringstream os;
    switch (kind) {
        case GroupKind::SL: os << "SL"; break;
        case GroupKind::GL: os << "GL"; break;
        case GroupKind::Intermediate: os << "G<index " << index << ">"; break;
    }
    os << "(" << n << "," << field->q() << ")";
    return os.str();
}

uint32_t zeta(const Field& f) { return f.generator(); }

namespace {

struct SingerData {
    Mat gamma;           // companion matrix of the minimal polynomial of g
    uint64_t unit_order; // q^d - 1
};

const SingerData& singer_data(const Field& f, uint32_t d) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, uint32_t>, SingerData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(f.p(), f.e(), d);
    auto it = cache.find(key);
    if (it == cache.end()) {
        gf::ExtField ext(f, d);
        auto g = ext.generator_with_norm(f.generator());
        SingerData data{companion(ext.minimal_polynomial(g)), ext.unit_order()};
        it = cache.emplace(key, std::move(data)).first;
    }
    return it->second;
}

}  // namespace

Mat singer_gamma(const Field& f, uint32_t d) {
    if (d < 1) throw std::invalid_argument("singer_gamma: d must be >= 1");
    return singer_data(f, d).gamma;
}

Mat singer_gamma_pow(const Field& f, uint32_t d, int64_t e) {
    if (d < 1) throw std::invalid_argument("singer_gamma: d must be >= 1");
    const SingerData& sd = singer_data(f, d);
    int64_t r = e % static_cast<int64_t>(sd.unit_order);
    if (r < 0) r += sd.unit_order;
    return mat_pow(sd.gamma, r);
}

Mat sigma_k(const GroupSpec& g, uint32_t k) {
    uint32_t n = g.n;
    if (k < 1 || 2 * k > n) throw std::invalid_argument("sigma_k: need 1 <= k <= n/2");
    const Field& f = *g.field;
    Mat b1 = singer_gamma_pow(f, k, g.alpha() - 1);
    Mat b2 = singer_gamma_pow(f, n - k, 1);
    if (k == n - k && char_poly(b1) == char_poly(b2))
        throw std::invalid_argument("sigma_k: equal-degree blocks share a characteristic polynomial");
    return block_diag({b1, b2});
}

Mat t_j(const GroupSpec& g, uint32_t j) {
    uint32_t n = g.n;
    if (j < 1 || 4 * j > n - 2) throw std::invalid_argument("t_j: need 1 <= j <= (n-2)/4");
    const Field& f = *g.field;
    return block_diag({singer_gamma_pow(f, j, g.alpha() - 2), singer_gamma_pow(f, j + 1, 1),
                       singer_gamma_pow(f, n - 2 * j - 1, 1)});
}

Mat y_10p(const GroupSpec& g, uint64_t p) {
    uint32_t n = g.n;
    if (!nt::is_prime(p) || p <= 5 || n != 10 * p)
        throw std::invalid_argument("y_10p: need n = 10p with prime p > 5");
    const Field& f = *g.field;
    return block_diag({singer_gamma_pow(f, static_cast<uint32_t>(p), g.alpha() - 2),
                       singer_gamma_pow(f, 5, 1),
                       singer_gamma_pow(f, n - static_cast<uint32_t>(p) - 5, 1)});
}

Mat g_lambda(const GroupSpec& g, uint32_t a, uint32_t b, uint32_t c) {
    if (a < 1 || a > b || b > c || a + b + c != g.n ||
        std::gcd(a, std::gcd(b, c)) != 1)
        throw std::invalid_argument("g_lambda: need a coprime triple 1 <= a <= b <= c with a+b+c = n");
    const Field& f = *g.field;
    return block_diag({singer_gamma_pow(f, a, g.alpha() - 2), singer_gamma_pow(f, b, 1),
                       singer_gamma_pow(f, c, 1)});
}

Mat omega_singer(const GroupSpec& g) {
    const Field& f = *g.field;
    return singer_gamma_pow(f, g.n, g.alpha() + static_cast<int64_t>(f.q()) - 1);
}

}  // namespace lcov::mg
