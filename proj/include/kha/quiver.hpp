#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kha/rational_function.hpp"

namespace kha {

struct Edge {
    std::string src;
    std::string dst;
    std::string id;
};

// Finite quiver with named vertices and id-tagged edges (loops and multi-edges
// allowed). Every edge carries its own equivariant parameter t[id].
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            if (!vindex_.emplace(vertices_[k], k).second)
                throw Error(errc::malformed_quiver, "duplicate vertex '" + vertices_[k] + "'");
        }
        std::set<std::string> ids;
        for (const auto& e : edges_) {
            if (!vindex_.count(e.src)) throw Error(errc::unknown_vertex, "edge source '" + e.src + "'");
            if (!vindex_.count(e.dst)) throw Error(errc::unknown_vertex, "edge target '" + e.dst + "'");
            if (e.id.empty()) throw Error(errc::malformed_quiver, "edge with empty id");
            if (!ids.insert(e.id).second) throw Error(errc::duplicate_edge, "edge id '" + e.id + "'");
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_vertex(const std::string& v) const { return vindex_.count(v) != 0; }

    void require_vertex(const std::string& v) const {
        if (!has_vertex(v)) throw Error(errc::unknown_vertex, "'" + v + "'");
    }

    std::vector<Edge> edges_from_to(const std::string& i, const std::string& j) const {
        std::vector<Edge> out;
        for (const auto& e : edges_)
            if (e.src == i && e.dst == j) out.push_back(e);
        return out;
    }

    std::vector<Edge> loops_at(const std::string& i) const { return edges_from_to(i, i); }

    bool edge_free() const { return edges_.empty(); }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> vindex_;
};

// Dimension vectors are total maps vertex -> Z (missing entries are zero).
using DimVector = std::map<std::string, long>;

inline long dv_get(const DimVector& v, const std::string& i) {
    auto it = v.find(i);
    return it == v.end() ? 0 : it->second;
}

inline DimVector dv_unit(const std::string& i) { return DimVector{{i, 1}}; }

inline DimVector dv_add(const DimVector& a, const DimVector& b, long scale_b = 1) {
    DimVector r = a;
    for (const auto& [k, x] : b) {
        long n = dv_get(r, k) + scale_b * x;
        if (n == 0) r.erase(k); else r[k] = n;
    }
    return r;
}

inline std::string dv_str(const Quiver& Q, const DimVector& v) {
    std::string s = "(";
    bool first = true;
    for (const auto& i : Q.vertices()) {
        if (!first) s += ",";
        s += std::to_string(dv_get(v, i));
        first = false;
    }
    return s + ")";
}

inline long dot(const DimVector& a, const DimVector& b) {
    long s = 0;
    for (const auto& [k, x] : a) s += x * dv_get(b, k);
    return s;
}

// Euler form <a,b> = sum_i a_i b_i - sum_{e:i->j} a_i b_j.
inline long euler_form(const Quiver& Q, const DimVector& a, const DimVector& b) {
    long s = dot(a, b);
    for (const auto& e : Q.edges()) s -= dv_get(a, e.src) * dv_get(b, e.dst);
    return s;
}

inline long sym_form(const Quiver& Q, const DimVector& a, const DimVector& b) {
    return euler_form(Q, a, b) + euler_form(Q, b, a);
}

// dim M(v,w) = 2 w.v - (v,v).
inline long nakajima_dim(const Quiver& Q, const DimVector& v, const DimVector& w) {
    return 2 * dot(w, v) - sym_form(Q, v, v);
}

// Shuffle kernel factor zeta_{ij}(x):
//   [(x - q)/(qh (x - 1))]^{delta_ij}
//   * prod_{e:i->j} qh (1 - 1/(x t_e)) * prod_{e:j->i} (1 - q x / t_e).
inline RationalFunction zeta(const Quiver& Q, const std::string& i, const std::string& j,
                             const RationalFunction& x) {
    Q.require_vertex(i);
    Q.require_vertex(j);
    RationalFunction r(1L);
    RationalFunction one(1L);
    if (i == j) r = (x - rf_q()) / (rf_qh() * (x - one));
    for (const auto& e : Q.edges_from_to(i, j))
        r *= rf_qh() * (one - (x * RationalFunction::var(VarId::t(e.id))).inverse());
    for (const auto& e : Q.edges_from_to(j, i))
        r *= one - rf_q() * x / RationalFunction::var(VarId::t(e.id));
    return r;
}

// gamma_i = prod_{loops e at i} (qh - t_e/qh)(1 - t_e) / (qh - qh^{-1}).
inline RationalFunction gamma_factor(const Quiver& Q, const std::string& i) {
    Q.require_vertex(i);
    RationalFunction num(1L);
    for (const auto& e : Q.loops_at(i)) {
        RationalFunction t = RationalFunction::var(VarId::t(e.id));
        num *= (rf_qh() - t * rf_qh(-1)) * (RationalFunction(1L) - t);
    }
    return num / (rf_qh() - rf_qh(-1));
}

// sigma_i = prod_{loops e at i} (1 - t_e)(1 - q/t_e).
inline RationalFunction sigma_factor(const Quiver& Q, const std::string& i) {
    Q.require_vertex(i);
    RationalFunction r(1L);
    for (const auto& e : Q.loops_at(i)) {
        RationalFunction t = RationalFunction::var(VarId::t(e.id));
        r *= (RationalFunction(1L) - t) * (RationalFunction(1L) - rf_q() / t);
    }
    return r;
}

// Standard examples used across the test and demo suites.
inline Quiver quiver_a1() { return Quiver({"1"}, {}); }
inline Quiver quiver_jordan() { return Quiver({"1"}, {{"1", "1", "loop"}}); }
inline Quiver quiver_a2() { return Quiver({"1", "2"}, {{"1", "2", "e"}}); }

} // namespace kha
