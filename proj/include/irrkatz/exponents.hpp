#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootsys.hpp"

namespace irrkatz {

/* ν ∈ R(P): one ParamExpr per (i,j,s) slot */
class ExponentVector {
public:
    using Entries = std::vector<std::vector<std::vector<ParamExpr>>>;

    ExponentVector(ShapePtr shape, Entries e) : shape_(std::move(shape)), e_(std::move(e)) {
        if (static_cast<int>(e_.size()) != shape_->points()) throw InvalidInput("exponent vector size mismatch");
        for (int i = 0; i < shape_->points(); ++i) {
            if (static_cast<int>(e_[i].size()) != shape_->factors(i)) throw InvalidInput("exponent vector size mismatch");
            for (int j = 0; j < shape_->factors(i); ++j)
                if (static_cast<int>(e_[i][j].size()) != shape_->length(i, j))
                    throw InvalidInput("exponent vector size mismatch");
        }
    }

    static ExponentVector from_formal(const FormalData& F, ShapePtr shape) {
        Entries e;
        for (const auto& p : F.points) {
            e.emplace_back();
            for (const auto& f : p.factors) {
                e.back().emplace_back();
                for (const auto& c : f.spectral.chains) e.back().back().push_back(c.exponent);
            }
        }
        return ExponentVector(std::move(shape), std::move(e));
    }
    static ExponentVector from_formal(const FormalData& F) {
        return from_formal(F, make_shape(LatticeShape::from_formal(F)));
    }

    /* one fresh parameter per slot: nu_i_j_s, 0-based */
    static ExponentVector generic(ShapePtr shape) {
        Entries e;
        for (int i = 0; i < shape->points(); ++i) {
            e.emplace_back();
            for (int j = 0; j < shape->factors(i); ++j) {
                e.back().emplace_back();
                for (int s = 0; s < shape->length(i, j); ++s)
                    e.back().back().push_back(ParamExpr::param(
                        "nu_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(s)));
            }
        }
        return ExponentVector(std::move(shape), std::move(e));
    }

    const LatticeShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    const Entries& entries() const { return e_; }
    const ParamExpr& at(int i, int j, int s) const { return e_.at(i).at(j).at(s); }
    ParamExpr& at(int i, int j, int s) { return e_.at(i).at(j).at(s); }

    /* ν(t) = Σ_i ν_{i,t_i,1} */
    ParamExpr at_tuple(const IndexTuple& t) const {
        shape_->check_tuple(t);
        ParamExpr r;
        for (int i = 0; i < shape_->points(); ++i) r += at(i, t[i], 0);
        return r;
    }

    /* formal data with these exponents, multiplicities m and the factors of `like` */
    FormalData to_formal(const FormalData& like, const LatticeVector& m) const {
        FormalData F;
        for (int i = 0; i < shape_->points(); ++i) {
            SingularPoint sp{like.points.at(i).location, {}};
            for (int j = 0; j < shape_->factors(i); ++j) {
                SpectralData S;
                for (int s = 0; s < shape_->length(i, j); ++s) S.chains.push_back({at(i, j, s), static_cast<int>(m.at(i, j, s))});
                sp.factors.push_back({like.points.at(i).factors.at(j).w, std::move(S)});
            }
            F.points.push_back(std::move(sp));
        }
        return F;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) out += " | ";
            for (std::size_t j = 0; j < e_[i].size(); ++j) {
                if (j) out += "; ";
                for (std::size_t s = 0; s < e_[i][j].size(); ++s) out += (s ? ", " : "") + e_[i][j][s].str();
            }
        }
        return out;
    }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return *a.shape_ == *b.shape_ && a.e_ == b.e_;
    }

private:
    ShapePtr shape_;
    Entries e_;
};

inline ExponentVector act_sigma_t(const ExponentVector& nu, const IndexTuple& t) {
    const LatticeShape& sh = nu.shape();
    ParamExpr X = ParamExpr(Rat(1)) - nu.at_tuple(t);
    ExponentVector r = nu;
    for (int i = 0; i < sh.points(); ++i)
        for (int j = 0; j < sh.factors(i); ++j)
            for (int s = 0; s < sh.length(i, j); ++s) {
                bool chosen = j == t[i] && s == 0;
                if (i == 0) {
                    if (chosen) r.at(i, j, s) = nu.at(i, j, s) + X * Rat(2);
                    else r.at(i, j, s) = nu.at(i, j, s) - X * Rat(-sh.weight(i, j, t[i]) - 1);
                } else if (!chosen) {
                    r.at(i, j, s) = nu.at(i, j, s) - X * Rat(-sh.weight(i, j, t[i]) + 1);
                }
            }
    return r;
}

inline ExponentVector act_sigma_perm(const ExponentVector& nu, int i, int j, int s) {
    const LatticeShape& sh = nu.shape();
    if (i < 0 || i >= sh.points() || j < 0 || j >= sh.factors(i) || s < 0 || s + 1 >= sh.length(i, j))
        throw InvalidInput("permutation index out of range");
    ExponentVector r = nu;
    std::swap(r.at(i, j, s), r.at(i, j, s + 1));
    return r;
}

/* E = −⟨c_t, c_t'⟩ */
inline long long coxeter_e(const LatticeShape& sh, const IndexTuple& t, const IndexTuple& tp) {
    sh.check_tuple(t);
    sh.check_tuple(tp);
    long long v = -(sh.points() - 2);
    for (int i = 0; i < sh.points(); ++i) {
        v += sh.weight(i, t[i], tp[i]);
        if (t[i] == tp[i]) ++v;
    }
    return -v;
}

/* the stated order of σ(t)σ(t′) on R(P); nullopt is the infinite marker */
inline std::optional<int> coxeter_order(const LatticeShape& sh, const IndexTuple& t, const IndexTuple& tp) {
    if (t == tp) throw InvalidInput("coxeter_order needs distinct tuples");
    switch (coxeter_e(sh, t, tp)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return std::nullopt;
    }
}

/* least k ≤ bound with (σ(t)σ(t′))^k ν = ν, acting on generic symbolic ν */
inline std::optional<int> iterated_order(const ShapePtr& shape, const IndexTuple& t, const IndexTuple& tp,
                                         int bound = 12) {
    ExponentVector nu = ExponentVector::generic(shape);
    ExponentVector cur = nu;
    for (int k = 1; k <= bound; ++k) {
        cur = act_sigma_t(act_sigma_t(cur, tp), t);
        if (cur == nu) return k;
    }
    return std::nullopt;
}

/* (μ^(u)(t), μ^(u)(t′)) for u = 1..m */
inline std::vector<std::pair<ParamExpr, ParamExpr>> mu_sequence(const ExponentVector& nu, const IndexTuple& t,
                                                                const IndexTuple& tp, int m) {
    if (t == tp) throw InvalidInput("mu_sequence needs distinct tuples");
    Rat E(static_cast<long>(coxeter_e(nu.shape(), t, tp)));
    std::vector<std::pair<ParamExpr, ParamExpr>> out;
    if (m < 1) return out;
    ParamExpr a = ParamExpr(Rat(1)) - nu.at_tuple(t);
    ParamExpr b = ParamExpr(Rat(1)) - nu.at_tuple(tp) + a * E;
    out.emplace_back(a, b);
    for (int u = 2; u <= m; ++u) {
        ParamExpr na = -a + b * E;
        ParamExpr nb = -b + na * E;
        a = na;
        b = nb;
        out.emplace_back(a, b);
    }
    return out;
}

/* least m ≤ bound at which both partial sums of μ vanish */
inline std::optional<int> mu_vanishing_order(const ExponentVector& nu, const IndexTuple& t, const IndexTuple& tp,
                                             int bound = 12) {
    auto seq = mu_sequence(nu, t, tp, bound);
    ParamExpr sa, sb;
    for (int u = 0; u < bound; ++u) {
        sa += seq[u].first;
        sb += seq[u].second;
        if (sa.is_zero() && sb.is_zero()) return u + 1;
    }
    return std::nullopt;
}

} // namespace irrkatz
