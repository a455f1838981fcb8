#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>

#include "kha/error.hpp"

namespace kha {

// Variable universe, totally ordered so every polynomial has one canonical form.
// Order of kinds: QH < T < U < Z < AUX; within a kind, (name, slot) lexicographic.
//   QH        q^{1/2}; the deformation parameter q is always qh^2, never primitive
//   T(e)      edge parameter t_e
//   U(i,a)    framing equivariant parameter u_{i,a}, slot a is 1-based
//   Z(i,a)    shuffle variable z_{i,a}, slot a is 1-based
//   AUX(name) free symbols: spectral u, expansion z and y, Chern roots x[i,a], ...
enum class VarKind : std::uint8_t { QH = 0, T = 1, U = 2, Z = 3, AUX = 4 };

struct VarId {
    VarKind kind = VarKind::QH;
    std::string name; // edge id (T), vertex id (U/Z), symbol name (AUX), empty for QH
    std::int32_t slot = 0; // 1-based slot for U/Z, 0 otherwise

    friend auto operator<=>(const VarId& a, const VarId& b) {
        return std::tie(a.kind, a.name, a.slot) <=> std::tie(b.kind, b.name, b.slot);
    }
    friend bool operator==(const VarId&, const VarId&) = default;

    static VarId qh() { return VarId{VarKind::QH, {}, 0}; }
    static VarId t(std::string edge) { return VarId{VarKind::T, std::move(edge), 0}; }
    static VarId u(std::string vertex, std::int32_t a) { return VarId{VarKind::U, std::move(vertex), a}; }
    static VarId z(std::string vertex, std::int32_t a) { return VarId{VarKind::Z, std::move(vertex), a}; }
    static VarId aux(std::string n) { return VarId{VarKind::AUX, std::move(n), 0}; }

    std::string str() const {
        switch (kind) {
            case VarKind::QH: return "qh";
            case VarKind::T: return "t[" + name + "]";
            case VarKind::U: return "u[" + name + "," + std::to_string(slot) + "]";
            case VarKind::Z: return "z[" + name + "," + std::to_string(slot) + "]";
            case VarKind::AUX: return name;
        }
        throw Error(errc::malformed_input, "corrupt VarId kind");
    }
};

} // namespace kha
