#pragma once

#include "hochkit/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hochkit {

// Finite graded basis indexed by structured keys, with conversion to sparse vectors.
template <class K>
class KeyedBasis {
public:
    using Elem = std::map<K, Scalar>;

    void add(const K& k, int degree)
    {
        if (where_.count(k)) return;
        where_[k] = {degree, static_cast<int>(by_degree_[degree].size())};
        by_degree_[degree].push_back(k);
    }

    bool contains(const K& k) const { return where_.count(k) > 0; }
    int degree_of(const K& k) const { return where_.at(k).first; }
    int index_of(const K& k) const { return where_.at(k).second; }
    int dim(int degree) const
    {
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? 0 : static_cast<int>(it->second.size());
    }
    const std::vector<K>& keys(int degree) const
    {
        static const std::vector<K> none;
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? none : it->second;
    }
    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [d, v] : by_degree_) out.push_back(d);
        return out;
    }

    lin::GradedSpace space(const std::function<std::string(const K&)>& label) const
    {
        lin::GradedSpace s;
        for (const auto& [d, v] : by_degree_)
            for (const auto& k : v) s.add(d, label(k));
        return s;
    }

    // Coordinates of a homogeneous element; keys outside the basis throw unless `drop`.
    lin::SparseVec vec(const Elem& e, bool drop = false) const
    {
        lin::SparseVec v;
        for (const auto& [k, s] : e) {
            auto it = where_.find(k);
            if (it == where_.end()) {
                if (drop) continue;
                throw std::out_of_range("element leaves the truncated basis");
            }
            lin::axpy(v, s, lin::SparseVec{{it->second.second, Scalar(1, s.field())}});
        }
        return v;
    }

    Elem elem(int degree, const lin::SparseVec& v) const
    {
        Elem e;
        const auto& ks = keys(degree);
        for (const auto& [i, s] : v) e[ks.at(i)] = s;
        return e;
    }

    // Block of a linear operator from degree d to degree d + shift. Terms that fall
    // outside the basis are dropped when `drop`, otherwise they throw.
    lin::Matrix block(int d, int shift, Field f, const std::function<Elem(const K&)>& op, bool drop) const
    {
        const auto& src = keys(d);
        lin::Matrix m(dim(d + shift), static_cast<int>(src.size()), f);
        for (int c = 0; c < static_cast<int>(src.size()); ++c) {
            lin::SparseVec col;
            for (const auto& [k, s] : op(src[c])) {
                auto it = where_.find(k);
                if (it == where_.end() || it->second.first != d + shift) {
                    if (drop && it == where_.end()) continue;
                    throw std::logic_error("operator term outside the expected degree");
                }
                col.emplace_back(it->second.second, s);
            }
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            m.set_col(c, std::move(col));
        }
        return m;
    }

private:
    std::map<int, std::vector<K>> by_degree_;
    std::map<K, std::pair<int, int>> where_;
};

template <class K>
void add_to(std::map<K, Scalar>& e, const K& k, const Scalar& s)
{
    if (s.is_zero()) return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) e.erase(it);
}

template <class K>
void add_to(std::map<K, Scalar>& e, const std::map<K, Scalar>& o, const Scalar& s)
{
    for (const auto& [k, v] : o) add_to(e, k, v * s);
}

}  // namespace hochkit
