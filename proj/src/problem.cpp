#include "rum/problem.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace rum {

using nlohmann::json;

namespace {

Rational field_rational(const json& v, const std::string& field) {
    std::optional<Rational> r;
    if (v.is_string())
        r = parse_rational(v.get<std::string>());
    else if (v.is_number_integer())
        r = Rational(v.get<long long>());
    if (!r)
        throw std::invalid_argument(field + ": malformed rational '" + v.dump() + "'");
    return *r;
}

const json& need(const json& doc, const std::string& field) {
    if (!doc.contains(field))
        throw std::invalid_argument("missing required field '" + field + "'");
    return doc.at(field);
}

}  // namespace

BudgetFamily ProblemFile::family() const { return BudgetFamily{n, prices}; }

ProblemFile parse_problem(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("problem document: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("problem document: not an object");

    ProblemFile p;
    const json& jn = need(doc, "n");
    if (!jn.is_number_integer() || jn.get<long long>() < 2)
        throw std::invalid_argument("n: must be an integer >= 2");
    p.n = jn.get<std::size_t>();

    const json& jp = need(doc, "prices");
    if (!jp.is_array() || jp.size() < 2)
        throw std::invalid_argument("prices: need at least two budgets");
    for (std::size_t j = 0; j < jp.size(); ++j) {
        const json& row = jp[j];
        if (!row.is_array() || row.size() != p.n)
            throw std::invalid_argument("prices: budget " + std::to_string(j + 1) +
                                        " must list " + std::to_string(p.n) + " entries");
        RationalVector pv;
        for (const auto& v : row) {
            Rational r = field_rational(v, "prices");
            if (r <= 0)
                throw std::invalid_argument("prices: price must be strictly positive");
            pv.push_back(r);
        }
        p.prices.push_back(std::move(pv));
    }

    if (doc.contains("pi")) {
        const json& jpi = doc.at("pi");
        if (!jpi.is_array() || jpi.size() != p.prices.size())
            throw std::invalid_argument("pi: need one block per budget");
        std::vector<RationalVector> blocks;
        for (std::size_t j = 0; j < jpi.size(); ++j) {
            if (!jpi[j].is_array())
                throw std::invalid_argument("pi: block " + std::to_string(j + 1) +
                                            " must be an array");
            RationalVector block;
            Rational sum = 0;
            for (const auto& v : jpi[j]) {
                Rational r = field_rational(v, "pi");
                if (r < 0)
                    throw std::invalid_argument("pi: probability must be nonnegative");
                sum += r;
                block.push_back(r);
            }
            if (sum != 1)
                throw std::invalid_argument("pi: block " + std::to_string(j + 1) +
                                            " sums to " + to_string(sum) + ", expected 1");
            blocks.push_back(std::move(block));
        }
        p.pi = std::move(blocks);
    }

    if (doc.contains("types")) {
        const json& jt = doc.at("types");
        if (!jt.is_array()) throw std::invalid_argument("types: must be an array");
        std::vector<std::vector<int>> types;
        for (const auto& tv : jt) {
            if (!tv.is_array())
                throw std::invalid_argument("types: each type must be a flat array");
            std::vector<int> bits;
            for (const auto& v : tv) {
                if (!v.is_number_integer() ||
                    (v.get<int>() != 0 && v.get<int>() != 1))
                    throw std::invalid_argument("types: entries must be 0 or 1");
                bits.push_back(v.get<int>());
            }
            types.push_back(std::move(bits));
        }
        p.types = std::move(types);
    }

    if (doc.contains("index_map")) {
        const json& jm = doc.at("index_map");
        if (!jm.is_array() || jm.size() != p.prices.size())
            throw std::invalid_argument("index_map: need one block per budget");
        IndexMap map;
        for (const auto& row : jm) {
            if (!row.is_array())
                throw std::invalid_argument("index_map: blocks must be arrays");
            std::vector<std::size_t> m;
            for (const auto& v : row) {
                if (!v.is_number_integer() || v.get<long long>() < 0)
                    throw std::invalid_argument("index_map: entries must be indices");
                m.push_back(v.get<std::size_t>());
            }
            map.push_back(std::move(m));
        }
        p.index_map = std::move(map);
    }
    return p;
}

ProblemFile parse_problem_path(const std::string& path) {
    if (path == "-") return parse_problem(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_problem(in);
}

}  // namespace rum
