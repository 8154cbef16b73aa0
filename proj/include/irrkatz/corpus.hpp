#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "parse.hpp"
#include "reduce.hpp"

namespace irrkatz {

using Params = std::map<std::string, Rat>;

struct CorpusEntry {
    std::string name;
    std::string op_template;
    Params defaults;
    std::string label;    // expected diagram
    std::string m_vector; // expected m(P), lattice text form
    long long idx = 0;
    Verdict verdict = Verdict::NotRoot;
    // expected formal data as ParamExpr exponents; w needs the numeric t
    std::function<FormalData(const Params&)> formal;

    DiffOperator instantiate(const Params& p) const { return parse_operator(op_template, p); }
    DiffOperator instantiate() const { return instantiate(defaults); }
};

namespace detail {

inline ParamExpr pe(const std::string& s) { return ParamExpr::parse(s); }

inline LocalFactor factor(const Location& at, std::map<int, Rat> w, std::vector<Chain> chains) {
    return {ExponentialFactor(at, std::move(w)), SpectralData{std::move(chains)}};
}

inline Rat param_or(const Params& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw InvalidInput("missing parameter " + k);
    return it->second;
}

inline Params shared_defaults() {
    return {{"a", Rat(1, 7)}, {"b", Rat(2, 11)}, {"c", Rat(3, 5)}, {"d", Rat(1, 13)}, {"t", Rat(3)}, {"lambda", Rat(1, 3)}};
}

} // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
    using detail::factor;
    using detail::pe;
    static const std::vector<CorpusEntry> entries = [] {
        Location inf = Location::infinity();
        std::vector<CorpusEntry> c;
        c.push_back({"Heun",
                     "x*(x-1)*(x-t)*D^2 + (c*(x-1)*(x-t) + d*x*(x-t) + (a+b+1-c-d)*x*(x-1))*D + (a*b*x - lambda)",
                     detail::shared_defaults(), "D4(1)", "1,1|1,1|1,1|1,1", 0, Verdict::ImaginaryRoot,
                     [inf](const Params& p) {
                         Rat t = detail::param_or(p, "t");
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}, {pe("b"), 1}})}},
                                            {Location(0), {factor(Location(0), {}, {{pe("0"), 1}, {pe("1 - c"), 1}})}},
                                            {Location(1), {factor(Location(1), {}, {{pe("0"), 1}, {pe("1 - d"), 1}})}},
                                            {Location(t), {factor(Location(t), {}, {{pe("0"), 1}, {pe("c + d - a - b"), 1}})}}}};
                     }});
        c.push_back({"cHeun", "x*(x-1)*D^2 + (-t*x*(x-1) + c*(x-1) + d*x)*D + (-t*a*x + lambda)",
                     detail::shared_defaults(), "A3(1)", "1;1|1,1|1,1", 0, Verdict::ImaginaryRoot,
                     [inf](const Params& p) {
                         Rat t = detail::param_or(p, "t");
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}}), factor(inf, {{1, t}}, {{pe("c + d - a"), 1}})}},
                                            {Location(0), {factor(Location(0), {}, {{pe("0"), 1}, {pe("1 - c"), 1}})}},
                                            {Location(1), {factor(Location(1), {}, {{pe("0"), 1}, {pe("1 - d"), 1}})}}}};
                     }});
        c.push_back({"bHeun", "x*D^2 + (-x^2 - t*x + c)*D + (-a*x + lambda)", detail::shared_defaults(), "A2(1)",
                     "1;1|1,1", 0, Verdict::ImaginaryRoot, [inf](const Params& p) {
                         Rat t = detail::param_or(p, "t");
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}}),
                                                   factor(inf, {{1, t}, {2, Rat(1)}}, {{pe("c + 1 - a"), 1}})}},
                                            {Location(0), {factor(Location(0), {}, {{pe("0"), 1}, {pe("1 - c"), 1}})}}}};
                     }});
        c.push_back({"tHeun", "D^2 + (-x^2 - t)*D + (-a*x + lambda)", detail::shared_defaults(), "A1(1)", "1;1", 0,
                     Verdict::ImaginaryRoot, [inf](const Params& p) {
                         Rat t = detail::param_or(p, "t");
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}}),
                                                   factor(inf, {{1, t}, {3, Rat(1)}}, {{pe("2 - a"), 1}})}}}};
                     }});
        c.push_back({"dHeun", "x^2*D^2 + (-x^2 + c*x + t)*D + (-a*x + lambda)", detail::shared_defaults(),
                     "A1(1) + A1(1)", "1;1|1;1", 0, Verdict::ImaginaryRoot, [inf](const Params& p) {
                         Rat t = detail::param_or(p, "t");
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}}), factor(inf, {{1, Rat(1)}}, {{pe("c - a"), 1}})}},
                                            {Location(0), {factor(Location(0), {}, {{pe("0"), 1}}),
                                                           factor(Location(0), {{1, -t}}, {{pe("2 - c"), 1}})}}}};
                     }});
        c.push_back({"Gauss", "x*(1-x)*D^2 + (c - (a+b+1)*x)*D - a*b",
                     {{"a", Rat(1, 7)}, {"b", Rat(2, 11)}, {"c", Rat(3, 5)}}, "D4", "1,1|1,1|1,1", 2, Verdict::RealRoot,
                     [inf](const Params&) {
                         return FormalData{{{inf, {factor(inf, {}, {{pe("a"), 1}, {pe("b"), 1}})}},
                                            {Location(0), {factor(Location(0), {}, {{pe("0"), 1}, {pe("1 - c"), 1}})}},
                                            {Location(1), {factor(Location(1), {}, {{pe("0"), 1}, {pe("c - a - b"), 1}})}}}};
                     }});
        return c;
    }();
    return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw InvalidInput("no corpus entry named '" + name + "'");
}

/* fresh rationals p/q with 2 ≤ q ≤ 97; t avoids 0 and 1 */
inline Params random_params(const CorpusEntry& e, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Params out;
    for (const auto& [k, v] : e.defaults) {
        std::uniform_int_distribution<long> den(2, 97);
        long q = den(rng);
        std::uniform_int_distribution<long> num(-3 * q, 3 * q);
        Rat r(num(rng), q);
        while (k == "t" && (r.is_zero() || r == Rat(1))) r = Rat(num(rng), q);
        out[k] = r;
    }
    return out;
}

} // namespace irrkatz
