#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kha {

// All library failures carry a stable machine-readable code plus a human message.
// Codes are part of the CLI contract (they appear in JSON reports verbatim).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* malformed_input     = "malformed input";
inline constexpr const char* malformed_quiver    = "malformed quiver json";
inline constexpr const char* unknown_vertex      = "unknown vertex";
inline constexpr const char* duplicate_edge      = "duplicate edge id";
inline constexpr const char* division_by_zero    = "division by zero";
inline constexpr const char* substitute_pole     = "substitute hits pole";
inline constexpr const char* inexact_division    = "inexact division";
inline constexpr const char* shuffle_cancel      = "shuffle cancellation failed";
inline constexpr const char* degree_limit        = "degree limit exceeded";
inline constexpr const char* degenerate_fixed_pt = "degenerate fixed point";
inline constexpr const char* non_grassmannian    = "unsupported: non-Grassmannian fixed points";
inline constexpr const char* nonpolynomial_elt   = "unsupported: non-polynomial shuffle element";
inline constexpr const char* divergent_limit     = "divergent limit";
inline constexpr const char* bad_sdet_class      = "sdet of non-monomial character";
} // namespace errc

} // namespace kha
