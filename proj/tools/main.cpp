// Command-line workbench: quiver configs in, canonical symbolic reports out.
//
// Subcommands: shuffle-mul, wheel-check, act, verify-relations, verify-action,
// rmatrix, pair.  Every command reads one quiver JSON config, prints either a
// text table or a versioned JSON report ("schema": 1), and exits 0 exactly
// when all requested checks pass (2 on usage/config/module errors).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kha/error.hpp"
#include "kha/fixedpoint.hpp"
#include "kha/parse.hpp"
#include "kha/quiver.hpp"
#include "kha/rmatrix.hpp"
#include "kha/shuffle.hpp"
#include "kha/taut.hpp"

using nlohmann::json;
using namespace kha;

namespace {

// KHA_THREADS caps worker parallelism.  Dispatch is single-threaded, so any
// cap >= 1 is honored as-is; reports never depend on the value.
long thread_cap() {
    const char* env = std::getenv("KHA_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long t = std::strtol(env, &end, 10);
    return (end != env && *end == '\0' && t >= 1) ? t : 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long n = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return n;
    } catch (const std::exception&) {
        throw Error(errc::malformed_input, what + ": expected an integer, got '" + s + "'");
    }
}

Quiver parse_quiver_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::malformed_input, "cannot open quiver config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(errc::malformed_input, "config '" + path + "': " + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_array())
        throw Error(errc::malformed_quiver,
                    "config '" + path + "': field 'vertices' must be an array of strings");
    std::vector<std::string> vertices;
    const json& jv = j.at("vertices");
    for (std::size_t k = 0; k < jv.size(); ++k) {
        if (!jv[k].is_string() || jv[k].get<std::string>().empty())
            throw Error(errc::malformed_quiver, "config '" + path + "': vertices[" +
                                                    std::to_string(k) +
                                                    "] must be a nonempty string");
        vertices.push_back(jv[k].get<std::string>());
    }
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        if (!j.at("edges").is_array())
            throw Error(errc::malformed_quiver,
                        "config '" + path + "': field 'edges' must be an array");
        const json& je = j.at("edges");
        for (std::size_t k = 0; k < je.size(); ++k) {
            for (const char* field : {"src", "dst", "id"})
                if (!je[k].is_object() || !je[k].contains(field) || !je[k].at(field).is_string())
                    throw Error(errc::malformed_quiver,
                                "config '" + path + "': edges[" + std::to_string(k) + "]." +
                                    field + " must be a string");
            edges.push_back({je[k].at("src").get<std::string>(),
                             je[k].at("dst").get<std::string>(),
                             je[k].at("id").get<std::string>()});
        }
    }
    return Quiver(std::move(vertices), std::move(edges));
}

// "2" broadcasts to every vertex; "1,2" assigns in declaration order.
DimVector parse_dimvec(const Quiver& Q, const std::string& s, const std::string& flag) {
    DimVector v;
    if (s.empty()) return v;
    std::vector<std::string> parts = split(s, ',');
    const auto& verts = Q.vertices();
    if (parts.size() == 1 && verts.size() > 1) parts.assign(verts.size(), parts[0]);
    if (parts.size() != verts.size())
        throw Error(errc::malformed_input, flag + ": expected 1 or " +
                                               std::to_string(verts.size()) +
                                               " comma-separated entries, got '" + s + "'");
    for (std::size_t k = 0; k < verts.size(); ++k) {
        long n = parse_long(parts[k], flag);
        if (n < 0) throw Error(errc::malformed_input, flag + ": entries must be >= 0");
        if (n > 0) v[verts[k]] = n;
    }
    return v;
}

// "1:0,2:1,1:-2" -> [(vertex, exponent), ...]
std::vector<std::pair<std::string, int>> parse_word(const Quiver& Q, const std::string& s,
                                                    const std::string& flag) {
    std::vector<std::pair<std::string, int>> word;
    for (const std::string& piece : split(s, ',')) {
        auto colon = piece.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw Error(errc::malformed_input, flag + ": expected 'vertex:exponent', got '" +
                                                   piece + "'");
        std::string vertex = piece.substr(0, colon);
        Q.require_vertex(vertex);
        word.emplace_back(vertex,
                          static_cast<int>(parse_long(piece.substr(colon + 1), flag)));
    }
    return word;
}

// "1:1,2;2:3" -> subsets {1: {1,2}, 2: {3}} of the framing index ranges.
FixedPointLabel parse_label(const Quiver& Q, const DimVector& w, const std::string& s,
                            const std::string& flag) {
    std::map<std::string, std::set<long>> subsets;
    for (const std::string& group : split(s, ';')) {
        auto colon = group.find(':');
        if (colon == std::string::npos || colon == 0)
            throw Error(errc::malformed_input,
                        flag + ": expected 'vertex:index,index...', got '" + group + "'");
        std::string vertex = group.substr(0, colon);
        Q.require_vertex(vertex);
        for (const std::string& idx : split(group.substr(colon + 1), ','))
            subsets[vertex].insert(parse_long(idx, flag));
    }
    return FixedPointLabel(w, std::move(subsets));
}

json dimvec_json(const Quiver& Q, const DimVector& v) {
    json j = json::object();
    for (const std::string& i : Q.vertices()) j[i] = dv_get(v, i);
    return j;
}

json vec_json(const ModuleVector& x) {
    json entries = json::array();
    for (const auto& [S, c] : x.coeffs) entries.push_back({{"label", S.str()}, {"value", c.str()}});
    return entries;
}

void vec_text(const ModuleVector& x, std::vector<std::string>& lines) {
    if (x.coeffs.empty()) {
        lines.push_back("  0");
        return;
    }
    for (const auto& [S, c] : x.coeffs) lines.push_back("  " + S.str() + ": " + c.str());
}

void emit(const json& j, const std::string& format, const std::vector<std::string>& text) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& line : text) std::cout << line << "\n";
}

// All v with entries in 0..cap (cap per vertex given by a limit function).
template <typename CapFn>
std::vector<DimVector> sectors_up_to(const Quiver& Q, CapFn cap) {
    std::vector<DimVector> sectors{DimVector{}};
    for (const std::string& i : Q.vertices()) {
        std::vector<DimVector> next;
        for (const DimVector& v : sectors)
            for (long n = 0; n <= cap(i); ++n) {
                DimVector v2 = v;
                if (n > 0) v2[i] = n;
                next.push_back(std::move(v2));
            }
        sectors = std::move(next);
    }
    return sectors;
}

// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string config;
    std::string format = "text";
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("config", o.config, "quiver JSON config path")->required();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
}

int run_shuffle_mul(const CommonOpts& o, const std::string& left, const std::string& right) {
    Quiver Q = parse_quiver_config(o.config);
    ShuffleElement A = word_to_shuffle(Q, parse_word(Q, left, "--left"));
    ShuffleElement B = word_to_shuffle(Q, parse_word(Q, right, "--right"));
    ShuffleElement C = shuffle_mul(Q, A, B);
    json j{{"schema", 1},
           {"command", "shuffle-mul"},
           {"degree", dimvec_json(Q, C.degree)},
           {"polynomial", C.is_polynomial()},
           {"value", C.value.str()}};
    emit(j, o.format,
         {"degree: " + dv_str(Q, C.degree), "value: " + C.value.str()});
    return 0;
}

int run_wheel_check(const CommonOpts& o, const std::string& word, const std::string& value,
                    const std::string& degree) {
    Quiver Q = parse_quiver_config(o.config);
    ShuffleElement R;
    if (!word.empty()) {
        R = word_to_shuffle(Q, parse_word(Q, word, "--word"));
    } else if (!value.empty()) {
        R = ShuffleElement{parse_dimvec(Q, degree, "--degree"), parse_rational(value)};
        if (!is_symmetric(Q, R))
            throw Error(errc::malformed_input,
                        "--value is not symmetric within vertex slot blocks");
    } else {
        throw Error(errc::malformed_input, "need --word, or --value with --degree");
    }
    WheelReport rep = wheel_check(Q, R);
    json j{{"schema", 1},
           {"command", "wheel-check"},
           {"pass", rep.pass},
           {"vacuous", rep.vacuous},
           {"checked", rep.checked},
           {"first_violation", rep.first_violation}};
    std::vector<std::string> text{"checked: " + std::to_string(rep.checked),
                                  std::string("pass: ") + (rep.pass ? "true" : "false")};
    if (!rep.pass) text.push_back("violation: " + rep.first_violation);
    emit(j, o.format, text);
    return rep.pass ? 0 : 1;
}

int run_act(const CommonOpts& o, const std::string& w_s, const std::string& label_s,
            const std::string& op, const std::string& vertex, long d, const std::string& word,
            const std::string& shuffle_s) {
    Quiver Q = parse_quiver_config(o.config);
    DimVector w = parse_dimvec(Q, w_s, "--w");
    FixedPointLabel L = parse_label(Q, w, label_s, "--label");
    ModuleVector x = basis_vector(L);
    ModuleVector y(w);
    std::string desc;

    int chosen = (!op.empty() ? 1 : 0) + (!word.empty() ? 1 : 0) + (!shuffle_s.empty() ? 1 : 0);
    if (chosen != 1)
        throw Error(errc::malformed_input, "exactly one of --op, --word, --shuffle is required");

    if (!word.empty()) {
        y = act_word_f(Q, parse_word(Q, word, "--word"), x);
        desc = "word [" + word + "]";
    } else if (!shuffle_s.empty()) {
        y = act_shuffle(Q, word_to_shuffle(Q, parse_word(Q, shuffle_s, "--shuffle")), x);
        desc = "shuffle image of [" + shuffle_s + "]";
    } else {
        if (vertex.empty())
            throw Error(errc::malformed_input, "--op requires --vertex");
        if (op == "e") y = act_e(Q, vertex, d, x);
        else if (op == "f") y = act_f(Q, vertex, d, x);
        else if (op == "a") y = act_a(Q, vertex, d, x);
        else if (op == "b") y = act_b(Q, vertex, d, x);
        else if (op == "h+") y = act_h_mode(Q, vertex, Direction::AT_INFINITY, d, x);
        else if (op == "h-") y = act_h_mode(Q, vertex, Direction::AT_ZERO, d, x);
        else if (op == "qv+") y = act_qv(Q, vertex, 1, x);
        else if (op == "qv-") y = act_qv(Q, vertex, -1, x);
        else if (op == "qw+") y = act_qw(Q, vertex, 1, x);
        else if (op == "qw-") y = act_qw(Q, vertex, -1, x);
        else
            throw Error(errc::malformed_input,
                        "unknown operator '" + op + "' (e, f, a, b, h+, h-, qv+, qv-, qw+, qw-)");
        desc = op + " at vertex " + vertex + " mode " + std::to_string(d);
    }

    json j{{"schema", 1},
           {"command", "act"},
           {"w", dimvec_json(Q, w)},
           {"input", L.str()},
           {"operator", desc},
           {"result", vec_json(y)}};
    std::vector<std::string> text{"input: " + L.str(), "operator: " + desc, "result:"};
    vec_text(y, text);
    emit(j, o.format, text);
    return 0;
}

int run_verify_relations(const CommonOpts& o, const std::string& w_s, long vmax, long dmin,
                         long dmax, bool rel5_full) {
    Quiver Q = parse_quiver_config(o.config);
    DimVector w = parse_dimvec(Q, w_s, "--w");
    RelationSuiteReport rep = relation_suite(Q, w, vmax, dmin, dmax, rel5_full);
    json per = json::object();
    for (const auto& [k, n] : rep.per_relation) per[k] = n;
    json j{{"schema", 1},     {"command", "verify-relations"},
           {"pass", rep.pass}, {"checked", rep.checked},
           {"per_relation", per}, {"failures", rep.failures}};
    std::vector<std::string> text{"checked: " + std::to_string(rep.checked)};
    for (const auto& [k, n] : rep.per_relation)
        text.push_back("  " + k + ": " + std::to_string(n));
    for (const auto& f : rep.failures) text.push_back("FAIL " + f);
    text.push_back(std::string("pass: ") + (rep.pass ? "true" : "false"));
    emit(j, o.format, text);
    return rep.pass ? 0 : 1;
}

int run_verify_action(const CommonOpts& o, const std::string& w_s, long vmax, long dmin,
                      long dmax) {
    Quiver Q = parse_quiver_config(o.config);
    DimVector w = parse_dimvec(Q, w_s, "--w");
    bool all = true;
    json rows = json::array();
    std::vector<std::string> text;
    long checked = 0;
    for (const std::string& i : Q.vertices()) {
        for (const DimVector& v : sectors_up_to(Q, [&](const std::string&) { return vmax; })) {
            for (long d = dmin; d <= dmax; ++d)
                for (long k = dmin; k <= dmax; ++k) {
                    EfReport r = ef_commutator_check(Q, i, d, k, v, w);
                    all = all && r.pass;
                    ++checked;
                    rows.push_back({{"i", i},
                                    {"d", d},
                                    {"k", k},
                                    {"v", dimvec_json(Q, v)},
                                    {"w", dimvec_json(Q, w)},
                                    {"pass", r.pass}});
                    text.push_back("i=" + i + " d=" + std::to_string(d) + " k=" +
                                   std::to_string(k) + " v=" + dv_str(Q, v) + " w=" +
                                   dv_str(Q, w) + ": " + (r.pass ? "pass" : "FAIL"));
                }
        }
    }
    json j{{"schema", 1},
           {"command", "verify-action"},
           {"pass", all},
           {"checked", checked},
           {"rows", rows}};
    text.push_back(std::string("pass: ") + (all ? "true" : "false"));
    emit(j, o.format, text);
    return all ? 0 : 1;
}

int run_rmatrix(const CommonOpts& o, const std::string& w_s, const std::string& vertex,
                const std::string& v_s, const std::string& block, const std::string& limit_s,
                long order, long vmax) {
    Quiver Q = parse_quiver_config(o.config);
    DimVector w = parse_dimvec(Q, w_s, "--w");

    if (block == "limits") {
        LimitCheckReport rep = limit_checks(Q, vertex, w, vmax);
        json per = json::object();
        for (const auto& [k, n] : rep.per_check) per[k] = n;
        json j{{"schema", 1},          {"command", "rmatrix"},
               {"block", "limits"},    {"vertex", vertex},
               {"pass", rep.pass},     {"checked", rep.checked},
               {"skipped", rep.skipped}, {"per_check", per},
               {"failures", rep.failures}, {"skipped_cases", rep.skipped_cases}};
        std::vector<std::string> text{"checked: " + std::to_string(rep.checked),
                                      "skipped: " + std::to_string(rep.skipped)};
        for (const auto& [k, n] : rep.per_check)
            text.push_back("  " + k + ": " + std::to_string(n));
        for (const auto& f : rep.failures) text.push_back("FAIL " + f);
        for (const auto& s : rep.skipped_cases) text.push_back("SKIP " + s);
        text.push_back(std::string("pass: ") + (rep.pass ? "true" : "false"));
        emit(j, o.format, text);
        return rep.pass ? 0 : 1;
    }

    DimVector v = parse_dimvec(Q, v_s, "--v");
    RationalFunction u = rf_spectral();
    auto apply = [&](const ModuleVector& x) {
        if (block == "diag") return r_block_diag(Q, vertex, u, x);
        if (block == "lower-f") return r_block_f(Q, vertex, u, x);
        if (block == "raise-e") return r_block_e(Q, vertex, u, x);
        if (block == "full-f") return full_f_block(Q, vertex, u, x);
        if (block == "full-e") return full_e_block(Q, vertex, u, x);
        throw Error(errc::malformed_input,
                    "unknown block '" + block +
                        "' (diag, lower-f, raise-e, full-f, full-e, limits)");
    };
    bool at_zero = (block == "raise-e" || block == "full-e");

    json entries = json::array();
    std::vector<std::string> text;
    for (const FixedPointLabel& S : enumerate_basis(Q, v, w)) {
        ModuleVector y = apply(basis_vector(S));
        if (limit_s == "0") y = limit_of(y, spectral_var(), Direction::AT_ZERO);
        else if (limit_s == "inf") y = limit_of(y, spectral_var(), Direction::AT_INFINITY);
        for (const auto& [T, c] : y.coeffs) {
            json e{{"in", S.str()}, {"out", T.str()}, {"value", c.str()}};
            if (order >= 0 && limit_s.empty()) {
                Direction dir = at_zero ? Direction::AT_ZERO : Direction::AT_INFINITY;
                json coeffs = json::array();
                for (long m = 0; m <= order; ++m)
                    coeffs.push_back(
                        expansion_coefficient(c, spectral_var(),
                                              static_cast<int>(at_zero ? m : -m), dir)
                            .str());
                e["expansion"] = {{"direction", at_zero ? "0" : "inf"},
                                  {"coefficients", coeffs}};
            }
            entries.push_back(e);
            text.push_back(S.str() + " -> " + T.str() + ": " + c.str());
        }
    }
    if (text.empty()) text.push_back("(zero block)");
    json j{{"schema", 1},   {"command", "rmatrix"}, {"block", block},
           {"vertex", vertex}, {"v", dimvec_json(Q, v)}, {"w", dimvec_json(Q, w)},
           {"entries", entries}};
    if (!limit_s.empty()) j["limit"] = limit_s;
    emit(j, o.format, text);
    return 0;
}

int run_pair(const CommonOpts& o, const std::string& w_s, const std::string& v_s) {
    Quiver Q = parse_quiver_config(o.config);
    DimVector w = parse_dimvec(Q, w_s, "--w");
    DimVector v = parse_dimvec(Q, v_s, "--v");
    bool nonzero = true;
    json entries = json::array();
    std::vector<std::string> text;
    for (const FixedPointLabel& S : enumerate_basis(Q, v, w)) {
        RationalFunction g = gram_diagonal(Q, S);
        nonzero = nonzero && !(g == RationalFunction{});
        entries.push_back({{"label", S.str()}, {"value", g.str()}});
        text.push_back(S.str() + ": " + g.str());
    }
    json j{{"schema", 1},     {"command", "pair"},  {"v", dimvec_json(Q, v)},
           {"w", dimvec_json(Q, w)}, {"diagonal", true}, {"pass", nonzero},
           {"entries", entries}};
    text.push_back(std::string("pass: ") + (nonzero ? "true" : "false"));
    emit(j, o.format, text);
    return nonzero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    (void)thread_cap();

    CLI::App app{"exact symbolic workbench for quiver Hall-algebra modules"};
    app.require_subcommand(1);
    int rc = 0;

    // shuffle-mul
    CommonOpts mul_o;
    std::string mul_left, mul_right;
    CLI::App* mul = app.add_subcommand("shuffle-mul", "multiply two word images");
    add_common(mul, mul_o);
    mul->add_option("--left", mul_left, "left word, e.g. '1:0,2:1'")->required();
    mul->add_option("--right", mul_right, "right word")->required();
    mul->callback([&] { rc = run_shuffle_mul(mul_o, mul_left, mul_right); });

    // wheel-check
    CommonOpts wheel_o;
    std::string wheel_word, wheel_value, wheel_degree;
    CLI::App* wheel = app.add_subcommand("wheel-check", "vanishing on wheel specializations");
    add_common(wheel, wheel_o);
    wheel->add_option("--word", wheel_word, "generator word to test");
    wheel->add_option("--value", wheel_value, "raw symmetric value to test");
    wheel->add_option("--degree", wheel_degree, "slot counts for --value, e.g. '3' or '2,1'");
    wheel->callback([&] { rc = run_wheel_check(wheel_o, wheel_word, wheel_value, wheel_degree); });

    // act
    CommonOpts act_o;
    std::string act_w, act_label, act_op, act_vertex, act_word_s, act_shuffle;
    long act_d = 0;
    CLI::App* act = app.add_subcommand("act", "apply an operator to a fixed-basis vector");
    add_common(act, act_o);
    act->add_option("--w", act_w, "framing, e.g. '2' or '1,2'")->required();
    act->add_option("--label", act_label, "basis label, e.g. '1:1,2;2:1' (default vacuum)");
    act->add_option("--op", act_op, "named operator: e, f, a, b, h+, h-, qv+, qv-, qw+, qw-");
    act->add_option("--vertex", act_vertex, "vertex for --op");
    act->add_option("--d", act_d, "mode exponent for --op (default 0)");
    act->add_option("--word", act_word_s, "lowering word to apply");
    act->add_option("--shuffle", act_shuffle, "word whose shuffle image to apply");
    act->callback([&] {
        rc = run_act(act_o, act_w, act_label, act_op, act_vertex, act_d, act_word_s, act_shuffle);
    });

    // verify-relations
    CommonOpts rel_o;
    std::string rel_w;
    long rel_vmax = 1, rel_dmin = -1, rel_dmax = 1;
    bool rel5_full = false;
    CLI::App* rel = app.add_subcommand("verify-relations", "exact operator relation suite");
    add_common(rel, rel_o);
    rel->add_option("--w", rel_w, "framing")->required();
    rel->add_option("--vmax", rel_vmax, "max sector entry (default 1)");
    rel->add_option("--dmin", rel_dmin, "min mode exponent (default -1)");
    rel->add_option("--dmax", rel_dmax, "max mode exponent (default 1)");
    rel->add_flag("--rel5-full", rel5_full, "force the commutator relation on every sector");
    rel->callback([&] {
        rc = run_verify_relations(rel_o, rel_w, rel_vmax, rel_dmin, rel_dmax, rel5_full);
    });

    // verify-action
    CommonOpts va_o;
    std::string va_w;
    long va_vmax = 1, va_dmin = -1, va_dmax = 1;
    CLI::App* va = app.add_subcommand("verify-action",
                                      "commutator identity in free Chern-root symbols");
    add_common(va, va_o);
    va->add_option("--w", va_w, "framing")->required();
    va->add_option("--vmax", va_vmax, "max sector entry (default 1)");
    va->add_option("--dmin", va_dmin, "min mode exponent (default -1)");
    va->add_option("--dmax", va_dmax, "max mode exponent (default 1)");
    va->callback([&] { rc = run_verify_action(va_o, va_w, va_vmax, va_dmin, va_dmax); });

    // rmatrix
    CommonOpts rm_o;
    std::string rm_w, rm_vertex, rm_v, rm_block = "diag", rm_limit;
    long rm_order = -1, rm_vmax = 1;
    CLI::App* rm = app.add_subcommand("rmatrix", "emit an R-matrix block or verify its limits");
    add_common(rm, rm_o);
    rm->add_option("--w", rm_w, "framing")->required();
    rm->add_option("--vertex", rm_vertex, "auxiliary vertex")->required();
    rm->add_option("--v", rm_v, "input sector (default vacuum)");
    rm->add_option("--block", rm_block, "diag, lower-f, raise-e, full-f, full-e, limits")
        ->check(CLI::IsMember({"diag", "lower-f", "raise-e", "full-f", "full-e", "limits"}));
    rm->add_option("--limit", rm_limit, "evaluate the block's limit instead")
        ->check(CLI::IsMember({"0", "inf"}));
    rm->add_option("--order", rm_order, "also emit expansion coefficients up to this order");
    rm->add_option("--vmax", rm_vmax, "max sector entry for --block limits (default 1)");
    rm->callback([&] {
        rc = run_rmatrix(rm_o, rm_w, rm_vertex, rm_v, rm_block, rm_limit, rm_order, rm_vmax);
    });

    // pair
    CommonOpts pair_o;
    std::string pair_w, pair_v;
    CLI::App* pairc = app.add_subcommand("pair", "Gram entries of the modified pairing");
    add_common(pairc, pair_o);
    pairc->add_option("--w", pair_w, "framing")->required();
    pairc->add_option("--v", pair_v, "sector (default vacuum)");
    pairc->callback([&] { rc = run_pair(pair_o, pair_w, pair_v); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
