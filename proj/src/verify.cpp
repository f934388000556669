#include "lcov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "lcov/numtheory.hpp"

namespace lcov::vfy {

const gf::Field& field_from_order(uint64_t q) {
    if (q < 2) throw std::invalid_argument("field_from_order: q must be at least 2");
    auto f = nt::factorize64(q);
    if (f.factors.size() != 1)
        throw std::invalid_argument("field_from_order: q must be a prime power");
    return gf::Field::get(static_cast<uint32_t>(f.factors[0].first), f.factors[0].second);
}

uint64_t gl_order(uint32_t n, uint64_t q) {
    __uint128_t total = 1;
    for (uint32_t i = 0; i < n * (n - 1) / 2; ++i) {
        total *= q;
        if (total > UINT64_MAX) throw std::overflow_error("gl_order: exceeds 64 bits");
    }
    __uint128_t power = 1;
    for (uint32_t i = 1; i <= n; ++i) {
        power *= q;
        if (power > UINT64_MAX) throw std::overflow_error("gl_order: exceeds 64 bits");
        total *= static_cast<uint64_t>(power) - 1;
        if (total > UINT64_MAX) throw std::overflow_error("gl_order: exceeds 64 bits");
    }
    return static_cast<uint64_t>(total);
}

uint64_t group_order(const mg::GroupSpec& g) {
    return gl_order(g.n, g.field->q()) / g.index;
}

std::vector<mg::CharShape> enumerate_shapes(uint32_t n, uint64_t q) {
    if (n < 1 || n > 12 || (q != 2 && q != 3 && q != 4 && q != 5))
        throw std::invalid_argument("enumerate_shapes: supported range is n <= 12, q in {2,3,4,5}");
    std::vector<uint64_t> avail(n + 1, 0);
    for (uint32_t d = 1; d <= n; ++d) {
        uint64_t c = gf::count_irreducibles(q, d);
        avail[d] = (d == 1) ? c - 1 : c;  // exclude x itself
    }
    std::vector<mg::CharShape> out;
    mg::CharShape cur;
    // For each degree in turn pick the factors of that degree: a
    // non-decreasing sequence of multiplicities, at most avail[d] of them.
    auto rec = [&](auto&& self, uint32_t d, uint32_t remaining, uint32_t minMult,
                   uint64_t slots) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (d > remaining) return;
        // stop using degree d: move on
        self(self, d + 1, remaining, 1, d + 1 <= n ? avail[d + 1] : 0);
        if (slots == 0) return;
        for (uint32_t m = minMult; d * m <= remaining; ++m) {
            cur.push_back({d, m});
            self(self, d, remaining - d * m, m, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, 1, n, 1, avail[1]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

VerifyReport cover_shapes(const cov::CoveringCertificate& cert, uint64_t q,
                          const std::vector<std::pair<mg::CharShape, uint64_t>>& shapes) {
    VerifyReport r;
    r.n = cert.n;
    r.q = q;
    r.total_shapes = shapes.size();
    for (const auto& cls : cert.classes) r.hits[cov::class_label(cls)] = 0;
    for (const auto& [shape, weight] : shapes) {
        bool hit = false;
        for (const auto& cls : cert.classes) {
            if (cov::member(shape, cert.n, cls)) {
                r.hits[cov::class_label(cls)] += weight;
                hit = true;
            }
        }
        if (hit)
            ++r.covered;
        else
            r.uncovered.push_back(shape);
    }
    return r;
}

}  // namespace

VerifyReport check_cover(const cov::CoveringCertificate& cert, uint64_t q) {
    std::vector<std::pair<mg::CharShape, uint64_t>> weighted;
    for (auto& s : enumerate_shapes(cert.n, q)) weighted.push_back({std::move(s), 1});
    return cover_shapes(cert, q, weighted);
}

MinimalityProbe check_cover_minimality_probe(const cov::CoveringCertificate& cert, uint64_t q) {
    auto shapes = enumerate_shapes(cert.n, q);
    size_t count = cert.classes.size();
    std::vector<bool> needed(count, false);
    for (const auto& shape : shapes) {
        size_t only = count;  // index of the unique covering class, if unique
        size_t hits = 0;
        for (size_t i = 0; i < count && hits < 2; ++i) {
            if (cov::member(shape, cert.n, cert.classes[i])) {
                only = i;
                ++hits;
            }
        }
        if (hits == 1) needed[only] = true;
    }
    MinimalityProbe probe;
    for (size_t i = 0; i < count; ++i) {
        probe.needed.push_back({cov::class_label(cert.classes[i]), needed[i]});
        if (!needed[i]) probe.all_needed = false;
    }
    return probe;
}

VerifyReport exhaustive_element_check(const cov::CoveringCertificate& cert, uint64_t q) {
    const gf::Field& f = field_from_order(q);
    uint32_t n = cert.n;
    if (gl_order(n, q) > 10000000)
        throw std::invalid_argument("exhaustive_element_check: group too large");
    auto universe = enumerate_shapes(n, q);
    std::map<mg::CharShape, uint64_t> seen;  // shape -> invertible element count
    mg::Mat x = mg::zero_mat(f, n);
    const uint32_t cells = n * n;
    while (true) {
        if (mg::mat_det(x) != 0) ++seen[mg::char_shape(x)];
        uint32_t i = 0;
        for (; i < cells; ++i) {
            if (++x.a[i] < q) break;
            x.a[i] = 0;
        }
        if (i == cells) break;
    }
    for (const auto& [shape, cnt] : seen)
        if (!std::binary_search(universe.begin(), universe.end(), shape))
            throw std::logic_error("exhaustive_element_check: realized shape missing from universe");
    // hits are weighted by element count; covered/uncovered stay at shape
    // granularity so the report agrees with check_cover
    std::vector<std::pair<mg::CharShape, uint64_t>> weighted(seen.begin(), seen.end());
    return cover_shapes(cert, q, weighted);
}

namespace {

uint64_t pack_key(const mg::Mat& x, uint64_t q) {
    uint64_t key = 0;
    for (uint32_t v : x.a) {
        if (key > (UINT64_MAX - v) / q)
            throw std::invalid_argument("subgroup_closure_order: matrix too large to index");
        key = key * q + v;
    }
    return key;
}

}  // namespace

uint64_t subgroup_closure_order(const std::vector<mg::Mat>& gens, uint64_t budget) {
    if (gens.empty()) throw std::invalid_argument("subgroup_closure_order: no generators");
    const gf::Field& f = *gens[0].field;
    uint64_t q = f.q();
    uint32_t n = gens[0].n;
    double bits = n * n * std::log2(static_cast<double>(q));
    if (bits >= 64)
        throw std::invalid_argument("subgroup_closure_order: matrix too large to index");
    mg::Mat id = mg::identity(f, n);
    std::unordered_set<uint64_t> elems{pack_key(id, q)};
    std::queue<mg::Mat> frontier;
    frontier.push(id);
    while (!frontier.empty()) {
        mg::Mat cur = std::move(frontier.front());
        frontier.pop();
        for (const auto& g : gens) {
            mg::Mat next = mg::mat_mul(cur, g);
            if (elems.insert(pack_key(next, q)).second) {
                if (elems.size() > budget)
                    throw std::runtime_error("subgroup_closure_order: element budget exceeded");
                frontier.push(std::move(next));
            }
        }
    }
    return elems.size();
}

namespace {

mg::Mat random_invertible(const gf::Field& f, uint32_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint32_t> dist(0, f.q() - 1);
    mg::Mat h = mg::zero_mat(f, n);
    do {
        for (auto& v : h.a) v = dist(rng);
    } while (mg::mat_det(h) == 0);
    return h;
}

void run_pair(const mg::GroupSpec& g, const mg::Mat& x, const mg::Mat& y, uint32_t samples,
              uint64_t target, const std::string& tag, std::mt19937_64& rng,
              SpotCheckReport& out) {
    for (uint32_t s = 0; s < samples; ++s) {
        mg::Mat h = random_invertible(*g.field, g.n, rng);
        mg::Mat yc = mg::mat_mul(mg::mat_mul(mg::mat_inverse(h), y), h);
        ++out.pairs_tested;
        uint64_t order = subgroup_closure_order({x, yc});
        if (order == target) {
            ++out.generated;
        } else {
            std::ostringstream os;
            os << tag << " sample " << s << ": generated order " << order << " of " << target;
            out.failures.push_back(os.str());
            out.pass = false;
        }
    }
}

}  // namespace

SpotCheckReport spot_check_pair(const mg::GroupSpec& g, const mg::Mat& x, const mg::Mat& y,
                                uint32_t samples) {
    uint64_t target = group_order(g);
    if (target > 10000000) throw std::invalid_argument("spot_check_pair: group too large");
    SpotCheckReport out;
    std::mt19937_64 rng(0x1c0cafe5ull);
    run_pair(g, x, y, samples, target, "pair", rng, out);
    return out;
}

SpotCheckReport independence_spot_check(const cov::KappaWitness& w, const gf::Field& f,
                                        uint32_t samples) {
    mg::GroupSpec g = cov::group_for(w.group, f, w.n);
    uint64_t target = group_order(g);
    if (target > 10000000) throw std::invalid_argument("independence_spot_check: group too large");
    SpotCheckReport out;
    std::mt19937_64 rng(0x1c0cafe5ull);
    std::vector<mg::Mat> mats;
    for (const auto& m : w.members) mats.push_back(cov::realize_member(g, m));
    for (size_t i = 0; i < mats.size(); ++i) {
        for (size_t j = i + 1; j < mats.size(); ++j) {
            std::string tag =
                cov::member_label(w.members[i]) + " with " + cov::member_label(w.members[j]);
            run_pair(g, mats[i], mats[j], samples, target, tag, rng, out);
        }
    }
    return out;
}

std::string verify_report_to_json(const VerifyReport& r) {
    nlohmann::json out;
    out["n"] = r.n;
    out["q"] = r.q;
    out["total_shapes"] = r.total_shapes;
    out["covered"] = r.covered;
    out["uncovered"] = nlohmann::json::array();
    for (const auto& shape : r.uncovered) {
        nlohmann::json enc = nlohmann::json::array();
        for (const auto& [d, m] : shape) enc.push_back({d, m});
        out["uncovered"].push_back(enc);
    }
    out["hits"] = nlohmann::json::object();
    for (const auto& [label, count] : r.hits) out["hits"][label] = count;
    return out.dump(2);
}

}  // namespace lcov::vfy
