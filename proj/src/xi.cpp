#include "rum/xi.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace rum {

std::vector<Subfamily> all_subfamilies(std::size_t J) {
    std::vector<Subfamily> out;
    for (std::size_t size = 2; size <= J; ++size) {
        // combinations of {0..J-1} of the given size, lexicographic
        Subfamily cur(size);
        for (std::size_t i = 0; i < size; ++i) cur[i] = i;
        for (;;) {
            out.push_back(cur);
            std::size_t i = size;
            while (i-- > 0) {
                if (cur[i] != J - size + i) break;
                if (i == 0) { i = size; break; }
            }
            if (i == size) break;
            ++cur[i];
            for (std::size_t k = i + 1; k < size; ++k) cur[k] = cur[k - 1] + 1;
        }
    }
    return out;
}

bool is_undominated(const Patch& patch, const Subfamily& sub) {
    if (!std::binary_search(sub.begin(), sub.end(), patch.budget)) return false;
    for (std::size_t jp : sub)
        if (jp != patch.budget && patch.signs[jp] != Sign::Above) return false;
    return true;
}

std::vector<int> xi_vector(const PatchLayout& layout, const Subfamily& sub) {
    std::vector<int> row(layout.total, 0);
    for (std::size_t j = 0; j < layout.patches.size(); ++j)
        for (std::size_t i = 0; i < layout.count(j); ++i)
            if (is_undominated(layout.patch(j, i), sub))
                row[layout.flat(j, i)] = 1;
    return row;
}

Rational XiMatrix::row_dot(std::size_t r, const RationalVector& v) const {
    Rational s = 0;
    for (std::size_t i = 0; i < cols; ++i)
        if (rows[r][i]) s += v[i];
    return s;
}

Rational XiMatrix::extended_dot(const RationalVector& v) const {
    Rational s = 0;
    for (std::size_t i = 0; i < cols; ++i) s += extended_row[i] * v[i];
    return s;
}

XiMatrix build_xi(const PatchLayout& layout) {
    XiMatrix xi;
    xi.cols = layout.total;
    xi.subfamilies = all_subfamilies(layout.patches.size());
    xi.rows.reserve(xi.subfamilies.size());
    for (const auto& sub : xi.subfamilies)
        xi.rows.push_back(xi_vector(layout, sub));
    xi.extended_row.assign(layout.total,
                           Rational(1, static_cast<long>(layout.patches.size())));
    return xi;
}

namespace {

bool strictly_sortable(const BudgetFamily& family, const RationalVector& d,
                       std::vector<std::size_t>& order) {
    const std::size_t J = family.num_budgets();
    RationalVector dots(J);
    for (std::size_t j = 0; j < J; ++j) dots[j] = dot(family.prices[j], d);
    order.resize(J);
    for (std::size_t j = 0; j < J; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dots[a] < dots[b]; });
    for (std::size_t k = 0; k + 1 < J; ++k)
        if (dots[order[k]] == dots[order[k + 1]]) return false;
    return true;
}

RationalVector find_direction(const BudgetFamily& family,
                              std::vector<std::size_t>& order) {
    const std::size_t n = family.n;
    for (std::size_t g = 0; g < n; ++g) {
        RationalVector d(n, 0);
        d[g] = 1;
        if (strictly_sortable(family, d, order)) return d;
    }
    {
        RationalVector d(n, 1);
        if (strictly_sortable(family, d, order)) return d;
    }
    std::mt19937_64 rng(20240307);
    std::uniform_int_distribution<int> coef(0, 999);
    for (int trial = 0; trial < 100000; ++trial) {
        RationalVector d(n);
        for (auto& x : d) x = coef(rng);
        bool zero = std::all_of(d.begin(), d.end(),
                                [](const Rational& x) { return x == 0; });
        if (zero) continue;
        if (strictly_sortable(family, d, order)) return d;
    }
    throw std::runtime_error("no separating direction found; prices may coincide");
}

}  // namespace

ChainPartition chain_partition(const BudgetFamily& family,
                               const PatchLayout& layout, const XiMatrix& xi) {
    const std::size_t J = family.num_budgets();
    ChainPartition cp;
    cp.direction = find_direction(family, cp.order);

    // chain patch at position k: the cell of budget order[k] containing
    // d/(p.d); its sign against j' is the order of the dot products
    RationalVector dots(J);
    for (std::size_t j = 0; j < J; ++j) dots[j] = dot(family.prices[j], cp.direction);
    cp.chain_patch.resize(J);
    for (std::size_t k = 0; k < J; ++k) {
        std::size_t b = cp.order[k];
        std::vector<Sign> want(J, Sign::Below);
        for (std::size_t jp = 0; jp < J; ++jp)
            if (jp != b) want[jp] = dots[jp] > dots[b] ? Sign::Above : Sign::Below;
        bool found = false;
        for (std::size_t i = 0; i < layout.count(b); ++i) {
            const Patch& p = layout.patch(b, i);
            bool match = true;
            for (std::size_t jp = 0; jp < J && match; ++jp)
                if (jp != b && p.signs[jp] != want[jp]) match = false;
            if (match) {
                cp.chain_patch[k] = i;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::logic_error("chain patch missing from enumeration");
    }

    cp.groups.assign(J - 1, {});
    for (std::size_t r = 0; r < xi.subfamilies.size(); ++r) {
        const Subfamily& sub = xi.subfamilies[r];
        for (std::size_t k = 0; k < J; ++k) {
            if (std::binary_search(sub.begin(), sub.end(), cp.order[k])) {
                if (k >= J - 1)
                    throw std::logic_error("subfamily with a single late budget");
                cp.groups[k].push_back(r);
                break;
            }
        }
    }

    // indicator pattern: the row of J is 1 at chain patch k iff J sits in
    // group k
    for (std::size_t r = 0; r < xi.subfamilies.size(); ++r) {
        for (std::size_t k = 0; k + 1 < J; ++k) {
            bool in_group =
                std::find(cp.groups[k].begin(), cp.groups[k].end(), r) !=
                cp.groups[k].end();
            std::size_t coord = layout.flat(cp.order[k], cp.chain_patch[k]);
            if ((xi.rows[r][coord] == 1) != in_group)
                throw std::logic_error("chain partition indicator mismatch");
        }
    }
    return cp;
}

namespace {

Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const std::size_t k = m.size();
    Integer sign = 1, prev = 1;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && m[piv][col] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < k; ++i)
            for (std::size_t j = col + 1; j < k; ++j)
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev;
        prev = m[col][col];
    }
    return sign * m[k - 1][k - 1];
}

// next k-combination of {0..n-1}; false when exhausted
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    std::size_t k = c.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (c[i] != n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Integer binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Integer r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * Integer(n - i) / Integer(i + 1);
    return r;
}

}  // namespace

TumVerdict check_total_unimodularity(const XiMatrix& xi, std::size_t max_order,
                                     std::uint64_t seed) {
    const std::size_t R = xi.rows.size(), C = xi.cols;
    const std::size_t limit = std::min({max_order, R, C});
    constexpr std::uint64_t kExhaustiveBudget = 2'000'000;

    TumVerdict v;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    auto det_of = [&](const std::vector<std::size_t>& rs,
                      const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Integer>> sub(rs.size(),
                                              std::vector<Integer>(cs.size()));
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j)
                sub[i][j] = xi.rows[rs[i]][cs[j]];
        return bareiss_det(std::move(sub));
    };

    for (std::size_t k = 1; k <= limit; ++k) {
        Integer count = binom(R, k) * binom(C, k);
        if (count <= kExhaustiveBudget) {
            std::vector<std::size_t> rs(k), cs(k);
            for (std::size_t i = 0; i < k; ++i) rs[i] = i;
            do {
                for (std::size_t i = 0; i < k; ++i) cs[i] = i;
                do {
                    Integer d = det_of(rs, cs);
                    if (d < -1 || d > 1)
                        return {false, v.exhaustive, k, rs, cs, d};
                } while (next_combination(cs, C));
            } while (next_combination(rs, R));
        } else {
            v.exhaustive = false;
            for (std::uint64_t trial = 0; trial < 50'000; ++trial) {
                std::vector<std::size_t> rs, cs;
                std::set<std::size_t> rset, cset;
                while (rset.size() < k)
                    rset.insert(rng() % R);
                while (cset.size() < k)
                    cset.insert(rng() % C);
                rs.assign(rset.begin(), rset.end());
                cs.assign(cset.begin(), cset.end());
                Integer d = det_of(rs, cs);
                if (d < -1 || d > 1)
                    return {false, false, k, rs, cs, d};
            }
        }
        v.max_order_checked = k;
    }
    return v;
}

}  // namespace rum
