#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exponents.hpp"

namespace irrkatz {

enum class StepKind { TwistedEuler, Permutation };
enum class Verdict { RealRoot, ImaginaryRoot, NotRoot };

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::RealRoot: return "RealRoot";
    case Verdict::ImaginaryRoot: return "ImaginaryRoot";
    default: return "NotRoot";
    }
}

struct ReductionStep {
    StepKind kind = StepKind::Permutation;
    IndexTuple t;          // TwistedEuler
    int i = 0, j = 0, s = 0; // Permutation, 0-based; swaps slots s and s+1
    LatticeVector before, after;
    long long defect = 0;

    LatticeVector apply(const LatticeVector& a) const {
        return kind == StepKind::TwistedEuler ? sigma_t(a, t) : sigma_perm(a, i, j, s);
    }

    /* factor and slot indices are 1-based here, points stay 0-based with 0 = ∞ */
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json o;
        if (kind == StepKind::TwistedEuler) {
            o["kind"] = "twisted_euler";
            nlohmann::ordered_json tt = nlohmann::ordered_json::array();
            for (int v : t) tt.push_back(v + 1);
            o["t"] = tt;
            o["defect"] = defect;
        } else {
            o["kind"] = "permutation";
            o["i"] = i;
            o["j"] = j + 1;
            o["s"] = s + 1;
        }
        o["before"] = before.str();
        o["after"] = after.str();
        return o;
    }
};

struct Transcript {
    LatticeVector input;
    std::vector<ReductionStep> steps;
    Verdict verdict = Verdict::NotRoot;
    std::optional<LatticeVector> fundamental;
    long long input_idx = 0;

    const LatticeVector& final_vector() const { return steps.empty() ? input : steps.back().after; }
    int twisted_euler_steps() const {
        int n = 0;
        for (const auto& s : steps) n += s.kind == StepKind::TwistedEuler;
        return n;
    }
    /* RealRoot ⇒ idx = 2, ImaginaryRoot ⇒ idx ≤ 0 */
    bool idx_consistent() const {
        if (verdict == Verdict::RealRoot) return input_idx == 2;
        if (verdict == Verdict::ImaginaryRoot) return input_idx <= 0;
        return true;
    }

    std::string to_jsonl() const {
        std::string out;
        for (std::size_t k = 0; k < steps.size(); ++k) {
            auto o = steps[k].to_json();
            nlohmann::ordered_json line;
            line["step"] = k + 1;
            for (auto it = o.begin(); it != o.end(); ++it) line[it.key()] = it.value();
            out += line.dump() + "\n";
        }
        nlohmann::ordered_json last;
        last["verdict"] = verdict_name(verdict);
        last["idx"] = input_idx;
        last["input"] = input.str();
        last["final"] = final_vector().str();
        last["rank"] = rank(final_vector());
        if (fundamental) last["fundamental"] = fundamental->str();
        out += last.dump() + "\n";
        return out;
    }
};

inline LatticeVector replay(const LatticeVector& input, const std::vector<ReductionStep>& steps) {
    LatticeVector a = input;
    for (const auto& s : steps) a = s.apply(a);
    return a;
}

/* bubble sort of every chain into nonincreasing order */
inline std::pair<LatticeVector, std::vector<ReductionStep>> normalize(const LatticeVector& a) {
    LatticeVector cur = a;
    std::vector<ReductionStep> steps;
    const LatticeShape& sh = a.shape();
    for (int i = 0; i < sh.points(); ++i)
        for (int j = 0; j < sh.factors(i); ++j) {
            int l = sh.length(i, j);
            for (int pass = 0; pass + 1 < l; ++pass)
                for (int s = 0; s + 1 < l - pass; ++s) {
                    if (cur.at(i, j, s) >= cur.at(i, j, s + 1)) continue;
                    ReductionStep st;
                    st.kind = StepKind::Permutation;
                    st.i = i;
                    st.j = j;
                    st.s = s;
                    st.before = cur;
                    cur = sigma_perm(cur, i, j, s);
                    st.after = cur;
                    steps.push_back(std::move(st));
                }
        }
    return {cur, steps};
}

namespace detail {

/* nonnegative, sorted, rank 1: one unit at slot 1 of one block per point */
inline bool is_tuple_image(const LatticeVector& a) {
    const LatticeShape& sh = a.shape();
    for (int i = 0; i < sh.points(); ++i) {
        int units = 0;
        for (int j = 0; j < sh.factors(i); ++j)
            for (int s = 0; s < sh.length(i, j); ++s) {
                long long v = a.at(i, j, s);
                if (v == 0) continue;
                if (v != 1 || s != 0) return false;
                ++units;
            }
        if (units != 1) return false;
    }
    return true;
}

} // namespace detail

inline Transcript reduce(const LatticeVector& a) {
    Transcript tr{a, {}, Verdict::NotRoot, std::nullopt, 0};
    rank(a); // balanced check
    tr.input_idx = idx(a);
    LatticeVector cur = a;
    while (true) {
        if (!cur.is_nonnegative() || rank(cur) <= 0) {
            tr.verdict = Verdict::NotRoot;
            break;
        }
        auto [sorted, perm] = normalize(cur);
        for (auto& s : perm) tr.steps.push_back(std::move(s));
        cur = sorted;
        if (rank(cur) == 1) {
            tr.verdict = detail::is_tuple_image(cur) ? Verdict::RealRoot : Verdict::NotRoot;
            break;
        }
        std::optional<IndexTuple> best;
        long long best_d = 0;
        for (const auto& t : support_indices(cur)) {
            long long d = defect(cur, t);
            if (!best || d < best_d) {
                best = t;
                best_d = d;
            }
        }
        if (!best || best_d >= 0) {
            tr.verdict = Verdict::ImaginaryRoot;
            tr.fundamental = cur;
            break;
        }
        ReductionStep st;
        st.kind = StepKind::TwistedEuler;
        st.t = *best;
        st.defect = best_d;
        st.before = cur;
        cur = sigma_t(cur, *best);
        st.after = cur;
        tr.steps.push_back(std::move(st));
    }
    return tr;
}

/* classification of ±a by reduction; mixed signs are not roots */
inline Verdict is_phi_root(const LatticeVector& a) {
    if (a.is_zero()) return Verdict::NotRoot;
    if (a.is_nonnegative()) return reduce(a).verdict;
    LatticeVector n = -a;
    if (n.is_nonnegative()) return reduce(n).verdict;
    return Verdict::NotRoot;
}

/* ---- operator level ---- */

namespace detail {

inline Rat constant_exponent(const ParamExpr& e) {
    if (!e.is_constant()) throw InvalidInput("operator-level transforms need rational exponents, got " + e.str());
    return e.constant();
}

} // namespace detail

/*
 * E(t)Q for Q with formal data `like` (factors), current exponents nu and multiplicities m.
 * Throws AssumptionViolated when the Euler transform hypotheses fail.
 */
inline DiffOperator twisted_euler(const DiffOperator& Q, const FormalData& like, const ExponentVector& nu,
                                  const LatticeVector& m, const IndexTuple& t) {
    const LatticeShape& sh = nu.shape();
    sh.check_tuple(t);
    Rat lam = detail::constant_exponent(nu.at_tuple(t));
    Rat mu = Rat(1) - lam;
    Rat finite_shift;
    for (int i = 1; i < sh.points(); ++i) finite_shift += detail::constant_exponent(nu.at(i, t[i], 0));

    for (int i = 1; i < sh.points(); ++i) {
        Rat base = detail::constant_exponent(nu.at(i, t[i], 0));
        for (int s = 1; s < sh.length(i, t[i]); ++s) {
            if (m.at(i, t[i], s) == 0) continue;
            Rat v = detail::constant_exponent(nu.at(i, t[i], s)) - base + lam;
            if (v.is_integer())
                throw AssumptionViolated("integer resonance " + v.str() + " at " + like.points[i].location.str());
        }
    }
    for (int j = 0; j < sh.factors(0); ++j) {
        if (sh.weight(0, j, t[0]) < -1) continue;
        for (int s = 0; s < sh.length(0, j); ++s) {
            if (m.at(0, j, s) == 0) continue;
            Rat v = detail::constant_exponent(nu.at(0, j, s)) + finite_shift;
            if (v.is_integer()) throw AssumptionViolated("integer exponent " + v.str() + " at inf");
        }
    }

    DiffOperator R = Q;
    for (int i = 0; i < sh.points(); ++i) R = ad_exp(R, -like.points[i].factors[t[i]].w);
    for (int i = 1; i < sh.points(); ++i)
        R = ad_power(R, like.points[i].location.value(), -detail::constant_exponent(nu.at(i, t[i], 0)));
    R = euler(R, mu);
    for (int i = 1; i < sh.points(); ++i)
        R = ad_power(R, like.points[i].location.value(), detail::constant_exponent(nu.at(i, t[i], 0)));
    for (int i = 0; i < sh.points(); ++i) R = ad_exp(R, like.points[i].factors[t[i]].w);
    return prim(R);
}

struct OperatorStage {
    DiffOperator op;
    FormalData predicted;
    FormalData extracted;
};

struct OperatorReduction {
    Transcript transcript;
    DiffOperator final_operator;
    std::vector<OperatorStage> stages; // one per twisted Euler step
};

inline OperatorReduction reduce_operator(const DiffOperator& P) {
    DiffOperator Q = prim(P);
    FormalData F = extract_formal_data(Q);
    ShapePtr shape = make_shape(LatticeShape::from_formal(F));
    LatticeVector m = multiplicities(F, shape);
    ExponentVector nu = ExponentVector::from_formal(F, shape);
    OperatorReduction out{reduce(m), Q, {}};
    for (const auto& st : out.transcript.steps) {
        if (st.kind == StepKind::Permutation) {
            m = sigma_perm(m, st.i, st.j, st.s);
            nu = act_sigma_perm(nu, st.i, st.j, st.s);
            continue;
        }
        Q = twisted_euler(Q, F, nu, m, st.t);
        m = sigma_t(m, st.t);
        nu = act_sigma_t(nu, st.t);
        FormalData predicted = nu.to_formal(F, m);
        FormalData got = extract_formal_data(Q);
        std::string diff = formal_mismatch(predicted, got);
        if (!diff.empty()) throw PredictionMismatch("after twisted Euler step: " + diff);
        out.stages.push_back({Q, std::move(predicted), std::move(got)});
    }
    out.final_operator = Q;
    return out;
}

} // namespace irrkatz
