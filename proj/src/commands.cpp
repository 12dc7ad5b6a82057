#include "rum/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rum {

using nlohmann::json;

namespace {

std::string jrat(const Rational& r) { return to_string(r); }

json jvec(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(jrat(x));
    return a;
}

json jsub(const Subfamily& s) {
    json a = json::array();
    for (auto j : s) a.push_back(j + 1);
    return a;
}

std::string sub_text(const Subfamily& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

IndexMap identity_map(const PatchLayout& layout) {
    IndexMap m(layout.patches.size());
    for (std::size_t j = 0; j < layout.patches.size(); ++j) {
        m[j].resize(layout.count(j));
        for (std::size_t i = 0; i < layout.count(j); ++i) m[j][i] = i;
    }
    return m;
}

IndexMap load_index_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open index map '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("index map: ") + e.what());
    }
    if (doc.is_object() && doc.contains("index_map")) doc = doc.at("index_map");
    if (!doc.is_array()) throw std::invalid_argument("index map: expected an array");
    IndexMap m;
    for (const auto& row : doc) {
        std::vector<std::size_t> r;
        for (const auto& v : row) r.push_back(v.get<std::size_t>());
        m.push_back(std::move(r));
    }
    return m;
}

IndexMap resolve_map(const ProblemFile& problem, const CommandOptions& options,
                     const PatchLayout& layout) {
    IndexMap m;
    if (options.index_map_path)
        m = load_index_map(*options.index_map_path);
    else if (problem.index_map)
        m = *problem.index_map;
    else
        return identity_map(layout);

    if (m.size() != layout.patches.size())
        throw std::invalid_argument("index_map: need one block per budget");
    for (std::size_t j = 0; j < m.size(); ++j) {
        std::vector<bool> seen(layout.count(j), false);
        if (m[j].size() != layout.count(j))
            throw std::invalid_argument("index_map: budget " + std::to_string(j + 1) +
                                        " has " + std::to_string(layout.count(j)) +
                                        " patches");
        for (auto i : m[j]) {
            if (i >= layout.count(j) || seen[i])
                throw std::invalid_argument(
                    "index_map: budget " + std::to_string(j + 1) +
                    " block is not a permutation");
            seen[i] = true;
        }
    }
    return m;
}

// display-order blocks -> canonical flat coordinates
RationalVector pi_to_canonical(const std::vector<RationalVector>& blocks,
                               const PatchLayout& layout, const IndexMap& map) {
    RationalVector flat(layout.total, 0);
    if (blocks.size() != layout.patches.size())
        throw std::invalid_argument("pi: need one block per budget");
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].size() != layout.count(j))
            throw std::invalid_argument("pi: budget " + std::to_string(j + 1) +
                                        " has " + std::to_string(layout.count(j)) +
                                        " patches");
        for (std::size_t d = 0; d < blocks[j].size(); ++d)
            flat[layout.flat(j, map[j][d])] = blocks[j][d];
    }
    return flat;
}

template <typename T>
std::vector<T> flat_to_display(const std::vector<T>& canonical,
                               const PatchLayout& layout, const IndexMap& map) {
    std::vector<T> out(canonical.size());
    for (std::size_t j = 0; j < layout.patches.size(); ++j)
        for (std::size_t d = 0; d < layout.count(j); ++d)
            out[layout.flat(j, d)] = canonical[layout.flat(j, map[j][d])];
    return out;
}

std::vector<int> type_bits_to_canonical(const std::vector<int>& display,
                                        const PatchLayout& layout,
                                        const IndexMap& map) {
    if (display.size() != layout.total)
        throw std::invalid_argument("types: flat vector must have length " +
                                    std::to_string(layout.total));
    std::vector<int> flat(layout.total, 0);
    for (std::size_t j = 0; j < layout.patches.size(); ++j)
        for (std::size_t d = 0; d < layout.count(j); ++d)
            flat[layout.flat(j, map[j][d])] = display[layout.flat(j, d)];
    return flat;
}

StochasticDemand demand_from(const ProblemFile& problem, const PatchLayout& layout,
                             const IndexMap& map) {
    if (!problem.pi)
        throw std::invalid_argument("this command needs a 'pi' section");
    StochasticDemand d{pi_to_canonical(*problem.pi, layout, map)};
    d.validate(layout);
    return d;
}

std::vector<BehavioralType> types_from(const ProblemFile& problem,
                                       const PatchLayout& layout,
                                       const IndexMap& map) {
    if (!problem.types)
        throw std::invalid_argument("this command needs a 'types' section");
    std::vector<BehavioralType> out;
    for (const auto& bits : *problem.types)
        out.push_back(BehavioralType::from_flat(
            layout, type_bits_to_canonical(bits, layout, map)));
    return out;
}

std::string sign_text(const Patch& p) {
    std::string s;
    for (std::size_t jp = 0; jp < p.signs.size(); ++jp) {
        if (jp == p.budget) { s += '.'; continue; }
        s += p.signs[jp] == Sign::Above ? '+' : '-';
    }
    return s;
}

}  // namespace

Report run_command(const std::string& command, const ProblemFile& problem,
                   const CommandOptions& options) {
    BudgetFamily family = problem.family();
    family.validate();
    PatchLayout layout = enumerate_patches(family);
    IndexMap map = resolve_map(problem, options, layout);
    XiMatrix xi = build_xi(layout);

    const std::size_t J = family.num_budgets();
    std::ostringstream text;
    json out;
    Report rep;

    if (command == "patches") {
        out["I"] = layout.total;
        json budgets = json::array();
        text << "I = " << layout.total << "\n";
        for (std::size_t j = 0; j < J; ++j) {
            json jb = json::array();
            text << "budget " << j + 1 << " (" << layout.count(j) << " patches)\n";
            for (std::size_t d = 0; d < layout.count(j); ++d) {
                const Patch& p = layout.patch(j, map[j][d]);
                json jp;
                jp["display_index"] = d + 1;
                jp["canonical_index"] = p.canonical_index;
                jp["signs"] = sign_text(p);
                jp["witness"] = jvec(p.witness);
                jb.push_back(jp);
                text << "  B_" << j + 1 << "," << d + 1 << "  signs " << sign_text(p)
                     << "  witness (";
                for (std::size_t g = 0; g < p.witness.size(); ++g)
                    text << (g ? "," : "") << jrat(p.witness[g]);
                text << ")\n";
            }
            budgets.push_back(jb);
        }
        out["budgets"] = budgets;
    } else if (command == "xi") {
        json rows = json::array();
        for (std::size_t r = 0; r < xi.rows.size(); ++r) {
            auto disp = flat_to_display(xi.rows[r], layout, map);
            json jr;
            jr["subfamily"] = jsub(xi.subfamilies[r]);
            jr["row"] = disp;
            rows.push_back(jr);
            text << "xi^" << sub_text(xi.subfamilies[r]) << " = (";
            for (std::size_t c = 0; c < disp.size(); ++c) text << (c ? "," : "") << disp[c];
            text << ")\n";
        }
        out["rows"] = rows;
        out["extended_row"] = jvec(xi.extended_row);
        text << "extended row: constant 1/" << J << "\n";
    } else if (command == "test" || command == "weight") {
        StochasticDemand demand = demand_from(problem, layout, map);
        RationalityReport r = test_rationalizable(layout, xi, demand);
        json products = json::array();
        for (std::size_t i = 0; i < r.xi_products.size(); ++i) {
            json jp;
            jp["subfamily"] = jsub(xi.subfamilies[i]);
            jp["value"] = jrat(r.xi_products[i]);
            products.push_back(jp);
        }
        out["xi_products"] = products;
        out["rationalizable"] = r.rationalizable;
        json viol = json::array(), minimal = json::array(), argmin = json::array();
        for (auto v : r.violations) viol.push_back(jsub(xi.subfamilies[v]));
        for (auto v : r.minimal_violations) minimal.push_back(jsub(xi.subfamilies[v]));
        for (auto v : r.argmin_rows) argmin.push_back(jsub(xi.subfamilies[v]));
        out["violations"] = viol;
        out["minimal_violations"] = minimal;
        out["d_value"] = jrat(r.d_value);
        out["argmin"] = argmin;
        out["argmin_extended"] = r.argmin_extended;

        for (std::size_t i = 0; i < r.xi_products.size(); ++i)
            text << "xi^" << sub_text(xi.subfamilies[i]) << " . pi = "
                 << jrat(r.xi_products[i]) << "\n";
        text << "rationalizable: " << (r.rationalizable ? "yes" : "no") << "\n";
        if (!r.minimal_violations.empty()) {
            text << "minimal violations:";
            for (auto v : r.minimal_violations) text << " " << sub_text(xi.subfamilies[v]);
            text << "\n";
        }
        text << "D(pi) = " << jrat(r.d_value) << " achieved by";
        for (auto v : r.argmin_rows) text << " " << sub_text(xi.subfamilies[v]);
        if (r.argmin_extended) text << " extended";
        text << "\n";
        if (command == "test") rep.exit_code = r.rationalizable ? 0 : 1;
    } else if (command == "decompose") {
        StochasticDemand demand = demand_from(problem, layout, map);
        TypeEnumeration types = enumerate_types(layout, options.max_types);
        Decomposition d = primal_decompose(layout, types, demand);
        out["value_P"] = jrat(d.value_p);
        out["total_rational_weight"] = jrat(d.total_rational_weight);
        json weights = json::array();
        text << "P(pi) = " << jrat(d.value_p) << "\n";
        for (const auto& [t, w] : d.weights) {
            auto disp = flat_to_display(types.all[t].flat(layout), layout, map);
            json jw;
            jw["type"] = disp;
            jw["weight"] = jrat(w);
            jw["rational"] = static_cast<bool>(types.is_rational[t]);
            weights.push_back(jw);
            text << "  weight " << jrat(w) << (types.is_rational[t] ? "  rational (" : "  cyclic   (");
            for (std::size_t c = 0; c < disp.size(); ++c) text << (c ? "," : "") << disp[c];
            text << ")\n";
        }
        out["weights"] = weights;
    } else if (command == "classes") {
        TypeEnumeration types = enumerate_types(layout, options.max_types);
        TypeClasses cls = type_classes(layout, xi, types);
        json classes = json::array();
        for (std::size_t r = 0; r < cls.membership.size(); ++r) {
            json jc;
            jc["subfamily"] = jsub(xi.subfamilies[r]);
            json members = json::array();
            for (std::size_t t = 0; t < types.all.size(); ++t)
                if (cls.membership[r][t]) members.push_back(t);
            jc["members"] = members;
            classes.push_back(jc);
            text << "A^" << sub_text(xi.subfamilies[r]) << ": "
                 << members.size() << " types\n";
        }
        json ext = json::array();
        for (std::size_t t = 0; t < types.all.size(); ++t)
            if (cls.extended[t]) ext.push_back(t);
        out["classes"] = classes;
        out["extended_class"] = ext;
        out["num_types"] = types.all.size();
        out["num_rational"] = types.rational.size();
        text << "A^extended (= rational types): " << ext.size() << " of "
             << types.all.size() << "\n";
    } else if (command == "repair") {
        std::vector<BehavioralType> inputs = types_from(problem, layout, map);
        ExchangeResult res = exchange_repair(layout, xi, inputs);
        json repaired = json::array();
        for (std::size_t k = 0; k < res.repaired.size(); ++k) {
            auto disp = flat_to_display(res.repaired[k].flat(layout), layout, map);
            json jt;
            jt["type"] = disp;
            jt["rational"] = satisfies_sarp(layout, res.repaired[k]).consistent;
            repaired.push_back(jt);
            text << "repaired " << k + 1 << (jt["rational"].get<bool>() ? " (rational): (" : " (cyclic): (");
            for (std::size_t c = 0; c < disp.size(); ++c) text << (c ? "," : "") << disp[c];
            text << ")\n";
        }
        out["repaired"] = repaired;
        out["relabeling"] = res.relabeling;
    } else if (command == "chain") {
        ChainPartition cp = chain_partition(family, layout, xi);
        out["direction"] = jvec(cp.direction);
        json order = json::array();
        for (auto b : cp.order) order.push_back(b + 1);
        out["order"] = order;
        json chain = json::array();
        for (std::size_t k = 0; k < cp.chain_patch.size(); ++k) {
            std::size_t b = cp.order[k];
            // translate canonical chain patch to display position
            std::size_t disp = 0;
            for (std::size_t d = 0; d < layout.count(b); ++d)
                if (map[b][d] == cp.chain_patch[k]) disp = d;
            json jc;
            jc["budget"] = b + 1;
            jc["patch_display_index"] = disp + 1;
            chain.push_back(jc);
        }
        out["chain"] = chain;
        json groups = json::array();
        for (const auto& g : cp.groups) {
            json jg = json::array();
            for (auto r : g) jg.push_back(jsub(xi.subfamilies[r]));
            groups.push_back(jg);
        }
        out["groups"] = groups;
        text << "direction (";
        for (std::size_t g = 0; g < cp.direction.size(); ++g)
            text << (g ? "," : "") << jrat(cp.direction[g]);
        text << ")\norder:";
        for (auto b : cp.order) text << " " << b + 1;
        text << "\n";
        for (std::size_t k = 0; k < cp.groups.size(); ++k) {
            text << "group " << k + 1 << " (budget " << cp.order[k] + 1 << "):";
            for (auto r : cp.groups[k]) text << " " << sub_text(xi.subfamilies[r]);
            text << "\n";
        }
    } else if (command == "verify") {
        StochasticDemand demand = demand_from(problem, layout, map);
        TypeEnumeration types = enumerate_types(layout, options.max_types);
        CrossValidation cv = cross_validate(layout, xi, types, demand);
        out["agree"] = cv.agree;
        out["xi_verdict"] = cv.xi_verdict;
        out["lp_feasible"] = cv.lp_feasible;
        out["D"] = jrat(cv.d_value);
        out["P"] = jrat(cv.p_value);
        out["dual_lp"] = jrat(cv.dual_lp_value);
        text << "certificate: " << (cv.agree ? "agree" : "DISAGREE") << "\n"
             << "Xi pi >= 1: " << (cv.xi_verdict ? "yes" : "no")
             << ", vertex LP feasible: " << (cv.lp_feasible ? "yes" : "no") << "\n"
             << "D = " << jrat(cv.d_value) << ", P = " << jrat(cv.p_value)
             << ", dual LP = " << jrat(cv.dual_lp_value) << "\n";
    } else if (command == "tum") {
        std::size_t max_order = std::min(xi.rows.size(), xi.cols);
        TumVerdict v = check_total_unimodularity(xi, max_order, options.seed);
        out["tum"] = v.tum;
        out["exhaustive"] = v.exhaustive;
        out["max_order_checked"] = v.max_order_checked;
        if (!v.tum) {
            out["bad_rows"] = v.bad_rows;
            out["bad_cols"] = v.bad_cols;
            out["bad_det"] = to_string(Rational(v.bad_det));
        }
        text << (v.tum ? (v.exhaustive ? "TUM (exhaustive)" : "no violation found")
                       : "NOT TUM")
             << ", max order checked " << v.max_order_checked << "\n";
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }

    out["command"] = command;
    rep.machine_text = out.dump(2);
    rep.text = text.str();
    return rep;
}

}  // namespace rum
