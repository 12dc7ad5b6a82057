// Acceptance suite: each criterion prints exactly one PASS/FAIL line and all
// comparisons are exact rational equalities.
#include "common.hpp"

#include <doctest.h>

#include <iostream>
#include <random>

using namespace rum;
using namespace rumtest;

namespace {

void report(int num, const std::string& label, bool pass) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << num << ": "
              << label << "\n";
    CHECK_MESSAGE(pass, "criterion ", num, ": ", label);
}

struct Setup {
    BudgetFamily family;
    PatchLayout layout;
    XiMatrix xi;
    TypeEnumeration types;
    std::vector<std::vector<std::size_t>> map;

    Setup(const BudgetFamily& f, std::vector<std::vector<std::size_t>> m)
        : family(f),
          layout(enumerate_patches(f)),
          xi(build_xi(layout)),
          types(enumerate_types(layout)),
          map(std::move(m)) {}
};

Setup& lines() {
    static Setup s(crossing_lines_family(), crossing_lines_map());
    return s;
}
Setup& sym() {
    static Setup s(symmetric3_family(), symmetric3_map());
    return s;
}

std::vector<int> display_row(const Setup& s, std::size_t r) {
    std::vector<int> out(s.xi.cols);
    for (std::size_t j = 0; j < s.layout.patches.size(); ++j)
        for (std::size_t d = 0; d < s.layout.count(j); ++d)
            out[s.layout.flat(j, d)] = s.xi.rows[r][s.layout.flat(j, s.map[j][d])];
    return out;
}

std::size_t row_of(const Setup& s, const Subfamily& sub) {
    for (std::size_t r = 0; r < s.xi.subfamilies.size(); ++r)
        if (s.xi.subfamilies[r] == sub) return r;
    throw std::logic_error("row not found");
}

// published row order: {1,2,3}, {1,2}, {2,3}, {1,3}
const std::vector<Subfamily> kReferenceOrder = {{0, 1, 2}, {0, 1}, {1, 2}, {0, 2}};

RationalVector reference_products(const Setup& s, const RationalityReport& rep) {
    RationalVector out;
    for (const auto& sub : kReferenceOrder) out.push_back(rep.xi_products[row_of(s, sub)]);
    return out;
}

StochasticDemand demand(const Setup& s, const std::vector<std::string>& display) {
    RationalVector v;
    for (const auto& x : display) v.push_back(rat(x));
    return demand_from_display(s.layout, s.map, v);
}

const std::vector<std::string> kUniform9(9, "1/3");
const std::vector<std::string> kSkewed9 = {"1/10", "8/10", "1/10", "4/10", "2/10",
                                           "4/10", "1/10", "8/10", "1/10"};
const std::vector<std::string> kWarpOnly12 = {"0", "1/2", "1/2", "0", "0", "1/2",
                                              "1/2", "0", "0", "1/2", "1/2", "0"};
const std::vector<std::string> kHalfHalf9 = {"1/2", "0", "1/2", "1/2", "0", "1/2",
                                             "1/2", "0", "1/2"};

struct CvRecord {
    CrossValidation cv;
};

// shared pi set for criteria 7 and 8: all published demands plus >= 200
// fixed-seed random ones across both families
const std::vector<CvRecord>& cv_records() {
    static const std::vector<CvRecord> records = [] {
        std::vector<CvRecord> out;
        std::vector<std::pair<Setup*, std::vector<StochasticDemand>>> sets;
        sets.push_back({&lines(),
                        {demand(lines(), kUniform9), demand(lines(), kSkewed9),
                         demand(lines(), kHalfHalf9)}});
        sets.push_back({&sym(), {demand(sym(), kWarpOnly12)}});
        std::mt19937_64 rng(424242);
        for (auto& [s, demands] : sets)
            for (int k = 0; k < 100; ++k) demands.push_back(random_demand(s->layout, rng));
        for (auto& [s, demands] : sets)
            for (const auto& pi : demands)
                out.push_back({cross_validate(s->layout, s->xi, s->types, pi)});
        return out;
    }();
    return records;
}

}  // namespace

TEST_CASE("criterion 1: published 4x9 matrix") {
    auto& s = lines();
    bool pass = s.layout.total == 9;
    for (std::size_t j = 0; j < 3; ++j) pass = pass && s.layout.count(j) == 3;
    const std::vector<std::vector<int>> expect = {
        {1,0,0, 0,1,0, 0,0,1},
        {1,0,0, 0,1,1, 0,0,0},
        {0,0,0, 1,1,0, 0,0,1},
        {1,1,0, 0,0,0, 0,1,1}};
    pass = pass && s.xi.rows.size() == 4;
    for (std::size_t k = 0; k < kReferenceOrder.size() && pass; ++k)
        pass = display_row(s, row_of(s, kReferenceOrder[k])) == expect[k];
    report(1, "3 patches per budget and the exact 4x9 matrix", pass);
}

TEST_CASE("criterion 2: uniform demand products (1,1,1,4/3)") {
    auto& s = lines();
    auto rep = test_rationalizable(s.layout, s.xi, demand(s, kUniform9));
    bool pass = rep.rationalizable &&
                reference_products(s, rep) == RationalVector{1, 1, 1, Rational(4, 3)};
    report(2, "uniform demand yields (1,1,1,4/3), rationalizable", pass);
}

TEST_CASE("criterion 3: skewed demand full analysis") {
    auto& s = lines();
    auto pi = demand(s, kSkewed9);
    auto rep = test_rationalizable(s.layout, s.xi, pi);
    bool pass = !rep.rationalizable &&
                reference_products(s, rep) ==
                    RationalVector{Rational(2, 5), Rational(7, 10), Rational(7, 10),
                                   Rational(9, 5)};
    std::vector<Subfamily> minimal;
    for (auto r : rep.minimal_violations) minimal.push_back(s.xi.subfamilies[r]);
    pass = pass && minimal == std::vector<Subfamily>{{0, 1}, {1, 2}};
    pass = pass && rep.d_value == Rational(2, 5) && rep.argmin_rows.size() == 1 &&
           s.xi.subfamilies[rep.argmin_rows[0]] == Subfamily{0, 1, 2} &&
           !rep.argmin_extended;

    auto dec = primal_decompose(s.layout, s.types, pi);
    pass = pass && dec.value_p == Rational(2, 5);
    RationalVector recon(s.layout.total, 0);
    Rational total = 0;
    for (const auto& [t, w] : dec.weights) {
        total += w;
        auto flat = s.types.all[t].flat(s.layout);
        for (std::size_t c = 0; c < recon.size(); ++c)
            if (flat[c]) recon[c] += w;
    }
    pass = pass && total == 1 && recon == pi.pi;
    report(3, "products (2/5,7/10,7/10,9/5), minimal {1,2},{2,3}, D=P=2/5 with "
              "exact reconstruction", pass);
}

TEST_CASE("criterion 4: three-good family full analysis") {
    auto& s = sym();
    bool pass = s.layout.total == 12;
    const std::vector<std::vector<int>> expect = {
        {0,0,0,1, 0,0,0,1, 0,0,0,1},
        {0,0,1,1, 0,1,0,1, 0,0,0,0},
        {0,0,0,0, 0,0,1,1, 0,1,0,1},
        {0,1,0,1, 0,0,0,0, 0,0,1,1}};
    for (std::size_t k = 0; k < kReferenceOrder.size() && pass; ++k)
        pass = display_row(s, row_of(s, kReferenceOrder[k])) == expect[k];

    auto pi = demand(s, kWarpOnly12);
    auto rep = test_rationalizable(s.layout, s.xi, pi);
    pass = pass && !rep.rationalizable &&
           reference_products(s, rep) == RationalVector{0, 1, 1, 1};
    std::vector<Subfamily> minimal;
    for (auto r : rep.minimal_violations) minimal.push_back(s.xi.subfamilies[r]);
    pass = pass && minimal == std::vector<Subfamily>{{0, 1, 2}};
    pass = pass && rep.d_value == 0;
    auto dec = primal_decompose(s.layout, s.types, pi);
    pass = pass && dec.value_p == 0;
    // every size-2 row satisfied: WARP-consistent yet irrational
    for (std::size_t r = 0; r < s.xi.rows.size(); ++r)
        if (s.xi.subfamilies[r].size() == 2)
            pass = pass && rep.xi_products[r] >= 1;
    report(4, "I=12, published 4x12 matrix, products (0,1,1,1), D=P=0, pair rows "
              "satisfied", pass);
}

TEST_CASE("criterion 5: pairwise exchange and rationalizable midpoint") {
    auto& s = lines();
    auto a1 = type_from_display(s.layout, s.map, {1,0,0, 0,0,1, 1,0,0});
    auto a2 = type_from_display(s.layout, s.map, {0,0,1, 1,0,0, 0,0,1});
    auto res = exchange_repair(s.layout, s.xi, {a1, a2});
    bool pass = res.repaired.size() == 2 &&
                res.repaired[0] == type_from_display(s.layout, s.map,
                                                    {1,0,0, 1,0,0, 1,0,0}) &&
                res.repaired[1] == type_from_display(s.layout, s.map,
                                                    {0,0,1, 0,0,1, 0,0,1});
    std::vector<int> sum_in(s.layout.total, 0), sum_out(s.layout.total, 0);
    for (const auto& a : {a1, a2}) {
        auto flat = a.flat(s.layout);
        for (std::size_t c = 0; c < flat.size(); ++c) sum_in[c] += flat[c];
    }
    for (const auto& a : res.repaired) {
        auto flat = a.flat(s.layout);
        for (std::size_t c = 0; c < flat.size(); ++c) sum_out[c] += flat[c];
    }
    pass = pass && sum_in == sum_out;
    for (const auto& a : res.repaired)
        pass = pass && satisfies_sarp(s.layout, a).consistent;

    auto pi = demand(s, kHalfHalf9);
    auto rep = test_rationalizable(s.layout, s.xi, pi);
    auto dec = primal_decompose(s.layout, s.types, pi);
    pass = pass && rep.rationalizable && dec.value_p == 1;
    report(5, "exchange yields the published rational pair, midpoint has P=1", pass);
}

TEST_CASE("criterion 6: cycle test equals the matrix test on every type") {
    bool pass = true;
    std::size_t counted = 0;
    for (auto* s : {&lines(), &sym()}) {
        for (const auto& a : s->types.all) {
            ++counted;
            auto flat = a.flat(s->layout);
            bool xi_ok = true;
            for (const auto& row : s->xi.rows) {
                int prod = 0;
                for (std::size_t c = 0; c < flat.size(); ++c)
                    if (row[c] && flat[c]) ++prod;
                if (prod < 1) { xi_ok = false; break; }
            }
            if (satisfies_sarp(s->layout, a).consistent != xi_ok) pass = false;
        }
    }
    pass = pass && counted == 27 + 64;
    report(6, "SARP <=> Xi a >= 1 over all 91 types, zero exceptions", pass);
}

TEST_CASE("criterion 7: matrix verdict equals vertex-LP feasibility") {
    bool pass = true;
    for (const auto& rec : cv_records())
        if (rec.cv.xi_verdict != rec.cv.lp_feasible) pass = false;
    pass = pass && cv_records().size() >= 204;
    report(7, "verdict agreement on 204 demands (published + fixed-seed random)",
           pass);
}

TEST_CASE("criterion 8: row minimum equals primal and dual LP optimum") {
    bool pass = true;
    for (const auto& rec : cv_records()) {
        if (rec.cv.d_value != rec.cv.p_value) pass = false;
        if (rec.cv.d_value != rec.cv.dual_lp_value) pass = false;
        if (!rec.cv.agree) pass = false;
    }
    report(8, "min over extended rows == primal optimum == dual LP on the same "
              "204 demands", pass);
}

TEST_CASE("criterion 9: chain partition and the group-sum identity") {
    bool pass = true;
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> num(-9, 9);
    for (auto* s : {&lines(), &sym()}) {
        auto cp = chain_partition(s->family, s->layout, s->xi);
        // groups partition the ordinary rows
        std::vector<int> seen(s->xi.rows.size(), 0);
        for (const auto& g : cp.groups)
            for (auto r : g) seen[r] += 1;
        for (int c : seen)
            if (c != 1) pass = false;
        if (cp.groups.size() != s->family.num_budgets() - 1) pass = false;
        for (int trial = 0; trial < 50; ++trial) {
            RationalVector u(s->xi.rows.size());
            for (auto& x : u) x = Rational(num(rng), 7);
            for (std::size_t k = 0; k < cp.groups.size(); ++k) {
                std::size_t coord = s->layout.flat(cp.order[k], cp.chain_patch[k]);
                Rational lhs = 0;
                for (std::size_t r = 0; r < s->xi.rows.size(); ++r)
                    if (s->xi.rows[r][coord]) lhs += u[r];
                Rational rhs = 0;
                for (auto r : cp.groups[k]) rhs += u[r];
                if (lhs != rhs) pass = false;
            }
        }
    }
    report(9, "rows partitioned into J-1 groups; identity holds for 50 weight "
              "vectors per family", pass);
}

TEST_CASE("criterion 10: strict gain for tuples without a common class") {
    auto& s = lines();
    auto cls = type_classes(s.layout, s.xi, s.types);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> pick(0, s.types.all.size() - 1);
    std::size_t found = 0;
    bool pass = true;
    for (int trial = 0; trial < 4000 && found < 50; ++trial) {
        std::size_t m = 2 + trial % 2;
        std::vector<std::size_t> tuple;
        for (std::size_t k = 0; k < m; ++k) tuple.push_back(pick(rng));
        bool common = true;
        for (auto t : tuple) common = common && cls.extended[t];
        for (std::size_t r = 0; r < cls.membership.size() && !common; ++r) {
            common = true;
            for (auto t : tuple) common = common && cls.membership[r][t];
        }
        if (common) continue;
        ++found;
        RationalVector mix(s.layout.total, 0);
        Rational mean_d = 0;
        for (auto t : tuple) {
            auto flat = s.types.all[t].flat(s.layout);
            for (std::size_t c = 0; c < mix.size(); ++c)
                if (flat[c]) mix[c] += Rational(1, static_cast<long>(m));
            if (s.types.is_rational[t]) mean_d += Rational(1, static_cast<long>(m));
        }
        if (!(dual_value(s.xi, mix) > mean_d)) pass = false;
    }
    pass = pass && found >= 50;
    report(10, "50 sampled tuples (m in {2,3}) with no common class: strict "
               "mixture gain", pass);
}

TEST_CASE("criterion 11: exhaustive unimodularity probe with certified verdict") {
    // The stated expectation was that both matrices pass; in exact arithmetic
    // they do not. Both 4-row matrices contain a 3x3 submatrix of pair rows
    // with determinant +-2 (e.g. rows 2-4 of the published 4x9 matrix at
    // columns 1, 5, 9 give [[1,1,0],[0,1,1],[1,0,1]]). The probe must sweep
    // every submatrix order exhaustively and its witness must be certified by
    // an independent cofactor-expansion determinant.
    bool pass = true;
    for (auto* s : {&lines(), &sym()}) {
        auto v = check_total_unimodularity(
            s->xi, std::min(s->xi.rows.size(), s->xi.cols));
        pass = pass && !v.tum && v.exhaustive && v.bad_rows.size() == 3;
        Integer d = cofactor_det(witness_submatrix(s->xi, v));
        pass = pass && d == v.bad_det && (d < -1 || d > 1);
    }
    report(11, "exhaustive sweep; both matrices certified NOT totally "
               "unimodular (3x3 witness, determinant +-2)", pass);
}
