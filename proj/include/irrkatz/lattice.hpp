#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formal.hpp"

namespace irrkatz {

/* chain lengths l_{i,j} and weights W[i][j][j'] = wt(w_{i,j} − w_{i,j'}); 0-based indices, point 0 = ∞ */
class LatticeShape {
public:
    LatticeShape(std::vector<std::vector<int>> lengths, std::vector<std::vector<std::vector<int>>> weights)
        : lengths_(std::move(lengths)), weights_(std::move(weights)) {
        if (lengths_.empty()) throw InvalidInput("shape without points");
        if (weights_.size() != lengths_.size()) throw InvalidInput("weight table size mismatch");
        for (std::size_t i = 0; i < lengths_.size(); ++i) {
            std::size_t k = lengths_[i].size();
            if (k == 0) throw InvalidInput("point without factors");
            for (int l : lengths_[i])
                if (l < 1) throw InvalidInput("chain length must be positive");
            if (weights_[i].size() != k) throw InvalidInput("weight table size mismatch");
            for (std::size_t j = 0; j < k; ++j) {
                if (weights_[i][j].size() != k) throw InvalidInput("weight table size mismatch");
                if (weights_[i][j][j] != 0) throw InvalidInput("weight table needs a zero diagonal");
                for (std::size_t jj = 0; jj < k; ++jj) {
                    if (weights_[i][j][jj] != weights_[i][jj][j]) throw InvalidInput("weight table must be symmetric");
                    if (j != jj && weights_[i][j][jj] > -1) throw InvalidInput("distinct factors need weight ≤ −1");
                }
            }
        }
    }

    /* all factors with w = 0 relative weights, i.e. one factor per point */
    static LatticeShape fuchsian(const std::vector<int>& lengths) {
        std::vector<std::vector<int>> l;
        std::vector<std::vector<std::vector<int>>> w;
        for (int v : lengths) {
            l.push_back({v});
            w.push_back({{0}});
        }
        return LatticeShape(l, w);
    }

    static LatticeShape from_formal(const FormalData& F) {
        std::vector<std::vector<int>> l;
        std::vector<std::vector<std::vector<int>>> w;
        for (const auto& p : F.points) {
            std::vector<int> li;
            std::vector<std::vector<int>> wi;
            for (const auto& f : p.factors) {
                li.push_back(static_cast<int>(f.spectral.chains.size()));
                std::vector<int> row;
                for (const auto& g : p.factors) row.push_back((f.w - g.w).weight());
                wi.push_back(row);
            }
            l.push_back(li);
            w.push_back(wi);
        }
        return LatticeShape(l, w);
    }

    int points() const { return static_cast<int>(lengths_.size()); }
    int factors(int i) const { return static_cast<int>(lengths_.at(i).size()); }
    int length(int i, int j) const { return lengths_.at(i).at(j); }
    int weight(int i, int j, int jj) const { return weights_.at(i).at(j).at(jj); }
    std::vector<int> factor_counts() const {
        std::vector<int> k;
        for (const auto& l : lengths_) k.push_back(static_cast<int>(l.size()));
        return k;
    }
    std::vector<IndexTuple> tuples() const { return index_set(factor_counts()); }
    const std::vector<std::vector<int>>& lengths() const { return lengths_; }

    void check_tuple(const IndexTuple& t) const {
        if (static_cast<int>(t.size()) != points()) throw InvalidInput("index tuple has the wrong length");
        for (int i = 0; i < points(); ++i)
            if (t[i] < 0 || t[i] >= factors(i)) throw InvalidInput("index tuple out of range");
    }

    friend bool operator==(const LatticeShape&, const LatticeShape&) = default;

private:
    std::vector<std::vector<int>> lengths_;
    std::vector<std::vector<std::vector<int>>> weights_;
};

using ShapePtr = std::shared_ptr<const LatticeShape>;
inline ShapePtr make_shape(LatticeShape s) { return std::make_shared<const LatticeShape>(std::move(s)); }

/* entries a_{i,j,s}; block sums not enforced (see is_balanced) */
class LatticeVector {
public:
    using Entries = std::vector<std::vector<std::vector<long long>>>;

    LatticeVector() = default;
    LatticeVector(ShapePtr shape, Entries e) : shape_(std::move(shape)), e_(std::move(e)) {
        if (static_cast<int>(e_.size()) != shape_->points()) throw InvalidInput("lattice vector size mismatch");
        for (int i = 0; i < shape_->points(); ++i) {
            if (static_cast<int>(e_[i].size()) != shape_->factors(i)) throw InvalidInput("lattice vector size mismatch");
            for (int j = 0; j < shape_->factors(i); ++j)
                if (static_cast<int>(e_[i][j].size()) != shape_->length(i, j))
                    throw InvalidInput("lattice vector size mismatch");
        }
    }
    static LatticeVector zero(ShapePtr shape) {
        Entries e;
        for (int i = 0; i < shape->points(); ++i) {
            e.emplace_back();
            for (int j = 0; j < shape->factors(i); ++j) e.back().emplace_back(shape->length(i, j), 0);
        }
        return LatticeVector(std::move(shape), std::move(e));
    }

    /* "1,1|1,1" with ';' between factors at one point */
    static LatticeVector parse(ShapePtr shape, const std::string& text) {
        Entries e;
        std::stringstream ps(text);
        std::string point;
        while (std::getline(ps, point, '|')) {
            e.emplace_back();
            std::stringstream fs(point);
            std::string factor;
            while (std::getline(fs, factor, ';')) {
                e.back().emplace_back();
                std::stringstream cs(factor);
                std::string v;
                while (std::getline(cs, v, ',')) {
                    try {
                        std::size_t used = 0;
                        long long x = std::stoll(v, &used);
                        while (used < v.size() && std::isspace(static_cast<unsigned char>(v[used]))) ++used;
                        if (used != v.size()) throw InvalidInput("bad entry");
                        e.back().back().push_back(x);
                    } catch (const std::logic_error&) {
                        throw InvalidInput("malformed lattice entry '" + v + "'");
                    }
                }
            }
        }
        return LatticeVector(std::move(shape), std::move(e));
    }

    const LatticeShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    const Entries& entries() const { return e_; }
    long long at(int i, int j, int s) const { return e_.at(i).at(j).at(s); }
    long long& at(int i, int j, int s) { return e_.at(i).at(j).at(s); }

    long long block_sum(int i, int j) const {
        long long r = 0;
        for (long long v : e_.at(i).at(j)) r += v;
        return r;
    }
    long long point_sum(int i) const {
        long long r = 0;
        for (int j = 0; j < shape_->factors(i); ++j) r += block_sum(i, j);
        return r;
    }
    bool is_balanced() const {
        for (int i = 1; i < shape_->points(); ++i)
            if (point_sum(i) != point_sum(0)) return false;
        return true;
    }
    bool is_nonnegative() const {
        for (const auto& p : e_)
            for (const auto& b : p)
                for (long long v : b)
                    if (v < 0) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& p : e_)
            for (const auto& b : p)
                for (long long v : b)
                    if (v != 0) return false;
        return true;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) out += "|";
            for (std::size_t j = 0; j < e_[i].size(); ++j) {
                if (j) out += ";";
                for (std::size_t s = 0; s < e_[i][j].size(); ++s) {
                    if (s) out += ",";
                    out += std::to_string(e_[i][j][s]);
                }
            }
        }
        return out;
    }

    LatticeVector operator-() const {
        LatticeVector r = *this;
        for (auto& p : r.e_)
            for (auto& b : p)
                for (auto& v : b) v = -v;
        return r;
    }
    friend LatticeVector operator*(long long k, LatticeVector a) {
        for (auto& p : a.e_)
            for (auto& b : p)
                for (auto& v : b) v *= k;
        return a;
    }
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
        return *a.shape_ == *b.shape_ && a.e_ == b.e_;
    }

private:
    ShapePtr shape_;
    Entries e_;
};

inline long long rank(const LatticeVector& a) {
    if (!a.is_balanced()) throw InvalidInput("unequal block sums in " + a.str());
    return a.point_sum(0);
}

inline long long defect(const LatticeVector& a, const IndexTuple& t) {
    const LatticeShape& sh = a.shape();
    sh.check_tuple(t);
    long long d = 0;
    for (int i = 0; i < sh.points(); ++i) {
        long long shift = i == 0 ? -1 : 1;
        for (int j = 0; j < sh.factors(i); ++j) d += (-sh.weight(i, j, t[i]) + shift) * a.block_sum(i, j);
        d -= a.at(i, t[i], 0);
    }
    return d;
}

inline LatticeVector sigma_t(const LatticeVector& a, const IndexTuple& t) {
    long long d = defect(a, t);
    LatticeVector r = a;
    for (int i = 0; i < a.shape().points(); ++i) r.at(i, t[i], 0) += d;
    return r;
}

/* swap slots s and s+1 of block (i,j) */
inline LatticeVector sigma_perm(const LatticeVector& a, int i, int j, int s) {
    const LatticeShape& sh = a.shape();
    if (i < 0 || i >= sh.points() || j < 0 || j >= sh.factors(i) || s < 0 || s + 1 >= sh.length(i, j))
        throw InvalidInput("permutation index out of range");
    LatticeVector r = a;
    std::swap(r.at(i, j, s), r.at(i, j, s + 1));
    return r;
}

/* T(a): tuples whose blocks are all nonzero */
inline std::vector<IndexTuple> support_indices(const LatticeVector& a) {
    std::vector<IndexTuple> out;
    const LatticeShape& sh = a.shape();
    for (const auto& t : sh.tuples()) {
        bool ok = true;
        for (int i = 0; i < sh.points() && ok; ++i) {
            long long abs_sum = 0;
            for (long long v : a.entries()[i][t[i]]) abs_sum += v < 0 ? -v : v;
            ok = abs_sum != 0;
        }
        if (ok) out.push_back(t);
    }
    return out;
}

/* m(P) read off formal data, chains in stored order */
inline LatticeVector multiplicities(const FormalData& F, ShapePtr shape) {
    LatticeVector::Entries e;
    for (const auto& p : F.points) {
        e.emplace_back();
        for (const auto& f : p.factors) {
            e.back().emplace_back();
            for (const auto& c : f.spectral.chains) e.back().back().push_back(c.multiplicity);
        }
    }
    return LatticeVector(std::move(shape), std::move(e));
}
inline LatticeVector multiplicities(const FormalData& F) {
    return multiplicities(F, make_shape(LatticeShape::from_formal(F)));
}

} // namespace irrkatz
