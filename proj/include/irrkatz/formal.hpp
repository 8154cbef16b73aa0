#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "weylalg.hpp"

namespace irrkatz {

struct Chain {
    ParamExpr exponent;
    int multiplicity = 0;
    friend bool operator==(const Chain&, const Chain&) = default;
};

struct SpectralData {
    std::vector<Chain> chains;
    int rank() const {
        int r = 0;
        for (const auto& c : chains) r += c.multiplicity;
        return r;
    }
    friend bool operator==(const SpectralData&, const SpectralData&) = default;
};

struct LocalFactor {
    ExponentialFactor w;
    SpectralData spectral;
    friend bool operator==(const LocalFactor& a, const LocalFactor& b) {
        return a.w == b.w && a.spectral == b.spectral;
    }
};

struct SingularPoint {
    Location location;
    std::vector<LocalFactor> factors;
    int rank() const {
        int r = 0;
        for (const auto& f : factors) r += f.spectral.rank();
        return r;
    }
    friend bool operator==(const SingularPoint& a, const SingularPoint& b) {
        return a.location == b.location && a.factors == b.factors;
    }
};

/* point 0 is ∞ */
struct FormalData {
    std::vector<SingularPoint> points;

    int rank() const { return points.empty() ? 0 : points.front().rank(); }
    std::vector<int> factor_counts() const {
        std::vector<int> k;
        for (const auto& p : points) k.push_back(static_cast<int>(p.factors.size()));
        return k;
    }

    void validate() const {
        if (points.empty() || !points.front().location.is_infinity())
            throw InvalidInput("formal data must start with the point at infinity");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            for (std::size_t j = 0; j < i; ++j)
                if (points[j].location == p.location) throw InvalidInput("repeated location " + p.location.str());
            if (p.factors.empty()) throw InvalidInput("point " + p.location.str() + " has no factors");
            for (std::size_t a = 0; a < p.factors.size(); ++a) {
                if (!(p.factors[a].w.point == p.location))
                    throw InvalidInput("exponential factor attached to the wrong point");
                if (p.factors[a].spectral.chains.empty())
                    throw InvalidInput("empty spectral data at " + p.location.str());
                for (const auto& c : p.factors[a].spectral.chains)
                    if (c.multiplicity < 0) throw InvalidInput("negative multiplicity");
                for (std::size_t b = 0; b < a; ++b)
                    if (p.factors[a].w == p.factors[b].w)
                        throw InvalidInput("repeated exponential factor at " + p.location.str());
            }
            if (p.rank() != rank()) throw InvalidInput("unequal ranks across singular points");
        }
    }

    FormalData substitute(const std::map<std::string, Rat>& values) const {
        FormalData r = *this;
        for (auto& p : r.points)
            for (auto& f : p.factors)
                for (auto& c : f.spectral.chains) c.exponent = c.exponent.substitute(values);
        return r;
    }

    friend bool operator==(const FormalData&, const FormalData&) = default;
};

using IndexTuple = std::vector<int>;

/* Π_i {0..k_i−1}, lexicographic */
inline std::vector<IndexTuple> index_set(const std::vector<int>& k) {
    std::vector<IndexTuple> out;
    if (k.empty()) return out;
    for (int v : k)
        if (v <= 0) return out;
    IndexTuple t(k.size(), 0);
    while (true) {
        out.push_back(t);
        int i = static_cast<int>(k.size()) - 1;
        while (i >= 0 && ++t[i] == k[i]) t[i--] = 0;
        if (i < 0) return out;
    }
}
inline std::vector<IndexTuple> index_set(const FormalData& F) { return index_set(F.factor_counts()); }

/* triangular vanishing p_{r+k}(λ+j) = 0, j ≤ m−1−k, for every chain */
inline bool oshima_check(const ThetaExpansion& T, const SpectralData& S) {
    int r = T.lowest();
    for (const auto& ch : S.chains) {
        if (!ch.exponent.is_constant()) throw InvalidInput("oshima_check needs rational exponents");
        const Rat& l = ch.exponent.constant();
        for (int k = 0; k < ch.multiplicity; ++k)
            for (int j = 0; j + k < ch.multiplicity; ++j)
                if (!T.at(r + k)(l + Rat(j)).is_zero()) return false;
    }
    return true;
}

/* m descending, then exponent */
inline void canonical_chain_order(SpectralData& S) {
    std::stable_sort(S.chains.begin(), S.chains.end(), [](const Chain& a, const Chain& b) {
        if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
        if (a.exponent.is_constant() && b.exponent.is_constant())
            return a.exponent.constant() < b.exponent.constant();
        return a.exponent < b.exponent;
    });
}

namespace detail {

/* spectral data of the w = 0 part of a local operator at 0 */
inline SpectralData spectral_at_zero(const DiffOperator& Q, int expected_rank) {
    ThetaExpansion T = theta_expand_at_zero(Q, Location(0));
    const Poly& C = T.at(T.lowest());
    if (C.degree() != expected_rank)
        throw OshimaCheckFailed("characteristic polynomial degree does not match the local rank");
    auto roots = rational_roots(C);
    int found = 0;
    for (const auto& [r, m] : roots) found += m;
    if (found != C.degree()) throw NonSplitCharPoly("characteristic polynomial " + C.str("t") + " does not split over Q");

    // greedy step-1 chains from the smallest representative
    std::map<Rat, int> left(roots.begin(), roots.end());
    SpectralData S;
    std::set<Rat> classes;
    while (!left.empty()) {
        Rat start = left.begin()->first;
        int len = 0;
        Rat cur = start;
        while (true) {
            auto it = left.find(cur);
            if (it == left.end()) break;
            if (--it->second == 0) left.erase(it);
            ++len;
            cur += Rat(1);
        }
        Rat cls = start - floor(start);
        if (!classes.insert(cls).second)
            throw OshimaCheckFailed("exponents " + C.str("t") +
                                    " form integer-separated chains; spectral data needs module-level analysis");
        S.chains.push_back({ParamExpr(start), len});
    }
    canonical_chain_order(S);
    if (!oshima_check(T, S)) throw OshimaCheckFailed("triangular conditions fail for " + C.str("t"));
    return S;
}

struct RawFactor {
    std::map<int, Rat> w; // z-side coefficients of z^{-k}
    SpectralData spectral;
};

inline void peel(const DiffOperator& Q, const std::map<int, Rat>& acc, int max_slope, std::vector<RawFactor>& out) {
    NewtonPolygon np = newton_polygon_at_zero(Q);
    int i1 = np.vertices.front().first;
    if (i1 > 0) out.push_back({acc, spectral_at_zero(Q, i1)});
    auto pts = newton_points(Q);
    for (std::size_t e = 0; e < np.slopes.size(); ++e) {
        const Rat& s = np.slopes[e];
        if (!s.is_integer()) throw RamifiedPoint("Newton polygon slope " + s.str() + " is not an integer");
        int k = static_cast<int>(s.to_long());
        if (max_slope > 0 && k >= max_slope) break;
        auto [ia, ja] = np.vertices[e];
        int ib = np.vertices[e + 1].first;
        std::vector<Rat> ec(ib - ia + 1);
        for (const auto& [i, y] : pts)
            if (i >= ia && i <= ib && y == ja + k * (i - ia)) ec[i - ia] = Q.coeff(i).laurent_coeff(y + i);
        Poly E(ec);
        auto roots = rational_roots(E);
        int total = 0;
        for (const auto& [w, mu] : roots) total += mu;
        if (total != E.degree())
            throw NonSplitCharPoly("leading exponential coefficients " + E.str("w") + " are not rational");
        for (const auto& [w, mu] : roots) {
            // remove exp(∫ w z^{-k-1} dz): D ↦ D + w z^{-k-1}
            DiffOperator twisted = substitute_d(Q, RatFunc(-w) * RatFunc::power_at(Rat(0), -k - 1));
            std::map<int, Rat> next = acc;
            next[k] += w;
            std::size_t before = out.size();
            peel(twisted, next, k, out);
            int r = 0;
            for (std::size_t f = before; f < out.size(); ++f) r += out[f].spectral.rank();
            if (r != mu) throw RamifiedPoint("exponential factor branch with leading coefficient " + w.str() +
                                             " is ramified");
        }
    }
}

} // namespace detail

inline FormalData extract_formal_data(const DiffOperator& P) {
    DiffOperator Q = prim(P);
    int n = Q.rank();
    if (n < 1) throw InvalidInput("extraction needs an operator of positive rank");
    FormalData F;
    for (const Location& at : singular_points(Q)) {
        std::vector<detail::RawFactor> raw;
        detail::peel(local_operator(Q, at), {}, 0, raw);
        SingularPoint sp{at, {}};
        for (auto& rf : raw) {
            std::map<int, Rat> w;
            for (const auto& [k, c] : rf.w)
                if (!c.is_zero()) w[k] = at.is_infinity() ? -c : c;
            sp.factors.push_back({ExponentialFactor(at, std::move(w)), std::move(rf.spectral)});
        }
        std::sort(sp.factors.begin(), sp.factors.end(),
                  [](const LocalFactor& a, const LocalFactor& b) { return a.w < b.w; });
        if (sp.rank() != n)
            throw RamifiedPoint("local factors at " + at.str() + " account for rank " + std::to_string(sp.rank()) +
                                " of " + std::to_string(n));
        F.points.push_back(std::move(sp));
    }
    return F;
}

/* δ(λ, m) + n(n−1); zero iff the Fuchs relation holds */
inline ParamExpr fuchs_defect(const FormalData& F) {
    ParamExpr d;
    long n = F.rank();
    long p1 = static_cast<long>(F.points.size());
    for (const auto& pt : F.points) {
        for (const auto& f : pt.factors)
            for (const auto& c : f.spectral.chains) {
                long m = c.multiplicity;
                d += c.exponent * Rat(m) + ParamExpr(Rat(m * (m - 1), 2));
            }
        for (std::size_t j = 0; j < pt.factors.size(); ++j)
            for (std::size_t k = j + 1; k < pt.factors.size(); ++k) {
                long wt = (pt.factors[j].w - pt.factors[k].w).weight();
                d += ParamExpr(Rat(wt * pt.factors[j].spectral.rank() * pt.factors[k].spectral.rank()));
            }
    }
    d -= ParamExpr(Rat(p1 * n * (n - 1), 2));
    d += ParamExpr(Rat(n * (n - 1)));
    return d;
}

/* empty when `got` realizes `expected` (chains with m = 0 ignored, orders free) */
inline std::string formal_mismatch(const FormalData& expected, const FormalData& got) {
    auto key = [](const SpectralData& s) {
        std::vector<std::pair<std::string, int>> v;
        for (const auto& c : s.chains)
            if (c.multiplicity > 0) v.emplace_back(c.exponent.str(), c.multiplicity);
        std::sort(v.begin(), v.end());
        return v;
    };
    for (const auto& ep : expected.points) {
        auto gp = std::find_if(got.points.begin(), got.points.end(),
                               [&](const SingularPoint& s) { return s.location == ep.location; });
        bool live = std::any_of(ep.factors.begin(), ep.factors.end(),
                                [](const LocalFactor& f) { return f.spectral.rank() > 0; });
        if (gp == got.points.end()) {
            // an ordinary point has the single chain (0; n) with w = 0
            bool ordinary = false;
            if (ep.factors.size() == 1 && ep.factors[0].w.is_zero()) {
                auto k = key(ep.factors[0].spectral);
                ordinary = k.size() == 1 && k[0].first == "0";
            }
            if (live && !ordinary) return "missing singular point " + ep.location.str();
            continue;
        }
        for (const auto& ef : ep.factors) {
            auto gf = std::find_if(gp->factors.begin(), gp->factors.end(),
                                   [&](const LocalFactor& f) { return f.w == ef.w; });
            auto want = key(ef.spectral);
            if (gf == gp->factors.end()) {
                if (!want.empty()) return "missing factor w=" + ef.w.str() + " at " + ep.location.str();
                continue;
            }
            if (key(gf->spectral) != want)
                return "spectral data differs at " + ep.location.str() + " w=" + ef.w.str();
        }
        for (const auto& gf : gp->factors) {
            bool known = std::any_of(ep.factors.begin(), ep.factors.end(),
                                     [&](const LocalFactor& f) { return f.w == gf.w; });
            if (!known) return "unexpected factor w=" + gf.w.str() + " at " + ep.location.str();
        }
    }
    for (const auto& gp : got.points) {
        bool known = std::any_of(expected.points.begin(), expected.points.end(),
                                 [&](const SingularPoint& s) { return s.location == gp.location; });
        if (!known) return "unexpected singular point " + gp.location.str();
    }
    return {};
}

inline std::string to_json(const FormalData& F) {
    using nlohmann::ordered_json;
    ordered_json pts = ordered_json::array();
    for (const auto& p : F.points) {
        ordered_json factors = ordered_json::array();
        for (const auto& f : p.factors) {
            ordered_json w = ordered_json::array();
            for (const auto& [k, c] : f.w.coeffs) w.push_back(ordered_json::array({k, c.str()}));
            ordered_json sp = ordered_json::array();
            for (const auto& c : f.spectral.chains) sp.push_back(ordered_json::array({c.exponent.str(), c.multiplicity}));
            ordered_json fo;
            fo["w"] = w;
            fo["spectral"] = sp;
            factors.push_back(fo);
        }
        ordered_json po;
        po["location"] = p.location.str();
        po["factors"] = factors;
        pts.push_back(po);
    }
    ordered_json root;
    root["points"] = pts;
    return root.dump();
}

inline FormalData formal_from_json(const std::string& text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    FormalData F;
    try {
        for (const auto& p : root.at("points")) {
            Location at = Location::parse(p.at("location").get<std::string>());
            SingularPoint sp{at, {}};
            for (const auto& f : p.at("factors")) {
                std::map<int, Rat> w;
                for (const auto& term : f.at("w")) {
                    if (!term.is_array() || term.size() != 2) throw InvalidInput("w terms are [order, \"rat\"] pairs");
                    int k = term.at(0).get<int>();
                    if (w.count(k)) throw InvalidInput("repeated order in w");
                    w[k] = Rat::parse(term.at(1).get<std::string>());
                }
                SpectralData S;
                for (const auto& c : f.at("spectral")) {
                    if (!c.is_array() || c.size() != 2) throw InvalidInput("spectral entries are [\"expr\", m] pairs");
                    S.chains.push_back({ParamExpr::parse(c.at(0).get<std::string>()), c.at(1).get<int>()});
                }
                sp.factors.push_back({ExponentialFactor(at, std::move(w)), std::move(S)});
            }
            F.points.push_back(std::move(sp));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed formal data: ") + e.what());
    }
    F.validate();
    return F;
}

} // namespace irrkatz
