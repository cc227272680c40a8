#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace affrigid::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why)
{
    throw UsageError(path + ": " + why);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

/// Rejects keys outside `allowed` so that typos surface instead of being ignored.
void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        fail(path.empty() ? "config" : path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known)
            fail(join(path, key), "unknown field");
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        fail(join(path, key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        fail(join(path, key), "must be finite");
    return x;
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        fail(join(path, key), "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, const std::string& fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        fail(join(path, key), "expected a string");
    return v.get<std::string>();
}

PotentialSpec parse_potential(const json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "k", "x0", "depth", "width", "centre"});
    const std::string kind = get_string(j, path, "kind", "zero");
    try {
        if (kind == "zero")
            return PotentialSpec::zero();
        if (kind == "harmonic")
            return PotentialSpec::harmonic(get_number(j, path, "k", 0.0), get_number(j, path, "x0", 0.0));
        if (kind == "finite_well")
            return PotentialSpec::finite_well(get_number(j, path, "depth", 0.0), get_number(j, path, "width", 0.0),
                                              get_number(j, path, "centre", 0.0));
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    }
    fail(join(path, "kind"), "unknown potential '" + kind + "' (zero, harmonic, finite_well)");
}

json potential_json(const PotentialSpec& p)
{
    switch (p.kind) {
    case PotentialSpec::Kind::Zero: return {{"kind", "zero"}};
    case PotentialSpec::Kind::Harmonic: return {{"kind", "harmonic"}, {"k", p.k}, {"x0", p.x0}};
    case PotentialSpec::Kind::FiniteWell:
        return {{"kind", "finite_well"}, {"depth", p.depth}, {"width", p.width}, {"centre", p.centre}};
    }
    return {};
}

RepLabel parse_spin(const json& v, const std::string& path)
{
    try {
        if (v.is_number())
            return RepLabel::from_spin(Group::SU2, v.get<double>());
        if (v.is_string())
            return RepLabel::parse("SU2:" + v.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    fail(path, "expected a spin such as 1, \"1/2\" or 1.5");
}

std::pair<int, int> parse_range(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        fail(path, "expected [lo, hi] with integer bounds");
    const int lo = j[0].get<int>(), hi = j[1].get<int>();
    if (lo > hi)
        fail(path, "lo must not exceed hi");
    return {lo, hi};
}

std::pair<double, double> parse_spin_range(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2)
        fail(path, "expected [lo, hi]");
    const double lo = parse_spin(j[0], path + "[0]").spin();
    const double hi = parse_spin(j[1], path + "[1]").spin();
    if (lo > hi)
        fail(path, "lo must not exceed hi");
    return {lo, hi};
}

constexpr std::size_t kMaxChannels = 100000;

void parse_planar_channels(const json& j, RunConfig& c)
{
    std::set<std::pair<int, int>> out;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = "channels[" + std::to_string(i) + "]";
            const json& e = j[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                fail(p, "expected [m, n] with integer charges");
            out.emplace(e[0].get<int>(), e[1].get<int>());
        }
    } else {
        check_keys(j, "channels", {"m", "n"});
        if (!j.contains("m") || !j.contains("n"))
            fail("channels", "a range needs both m and n");
        const auto [m0, m1] = parse_range(j.at("m"), "channels.m");
        const auto [n0, n1] = parse_range(j.at("n"), "channels.n");
        if (static_cast<double>(m1 - m0 + 1) * (n1 - n0 + 1) > kMaxChannels)
            fail("channels", "range expands to too many channels");
        for (int m = m0; m <= m1; ++m)
            for (int n = n0; n <= n1; ++n)
                out.emplace(m, n);
    }
    if (out.empty())
        fail("channels", "no channels requested");
    c.planar_channels.assign(out.begin(), out.end());
}

void parse_spatial_channels(const json& j, RunConfig& c)
{
    std::set<std::pair<RepLabel, RepLabel>> out;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = "channels[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != 2)
                fail(p, "expected [s, j]");
            const RepLabel a = parse_spin(j[i][0], p + "[0]"), b = parse_spin(j[i][1], p + "[1]");
            std::string why;
            if (!labels_admissible(a, b, c.target, &why))
                fail(p, "superselection: " + why + " (target " + to_string(c.target) + ")");
            out.emplace(a, b);
        }
    } else {
        // ranges keep only the admissible label pairs
        check_keys(j, "channels", {"s", "j"});
        if (!j.contains("s") || !j.contains("j"))
            fail("channels", "a range needs both s and j");
        const auto [s0, s1] = parse_spin_range(j.at("s"), "channels.s");
        const auto [j0, j1] = parse_spin_range(j.at("j"), "channels.j");
        for (int ts = static_cast<int>(std::lround(2 * s0)); ts <= std::lround(2 * s1); ++ts)
            for (int tj = static_cast<int>(std::lround(2 * j0)); tj <= std::lround(2 * j1); ++tj) {
                const RepLabel a = RepLabel::su2(ts), b = RepLabel::su2(tj);
                if (labels_admissible(a, b, c.target))
                    out.emplace(a, b);
            }
    }
    if (out.empty())
        fail("channels", "no admissible channels requested");
    c.spatial_channels.assign(out.begin(), out.end());
}

std::array<double, 3> parse_triple(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 3)
        fail(path, "expected three numbers");
    std::array<double, 3> out{};
    for (int a = 0; a < 3; ++a) {
        if (!j[a].is_number())
            fail(path + "[" + std::to_string(a) + "]", "expected a number");
        out[a] = j[a].get<double>();
    }
    return out;
}

} // namespace

std::string label_text(const RepLabel& l)
{
    const int t = l.twice_spin();
    return t % 2 == 0 ? std::to_string(t / 2) : std::to_string(t) + "/2";
}

RunConfig parse_config(const json& j)
{
    check_keys(j, "", {"model", "dimension", "params", "target", "channels", "grid", "limits", "potentials",
                       "solver", "outputs", "seed"});
    RunConfig c;
    try {
        c.model = parse_model_kind(get_string(j, "", "model", "AffAff"));
    } catch (const std::domain_error& e) {
        fail("model", e.what());
    }
    c.params.n = get_int(j, "", "dimension", 2);
    if (c.params.n != 2 && c.params.n != 3)
        fail("dimension", "must be 2 or 3");

    if (j.contains("params")) {
        const json& p = j.at("params");
        check_keys(p, "params", {"I", "A", "B", "hbar"});
        c.params.I = get_number(p, "params", "I", c.params.I);
        c.params.A = get_number(p, "params", "A", c.params.A);
        c.params.B = get_number(p, "params", "B", c.params.B);
        c.params.hbar = get_number(p, "params", "hbar", c.params.hbar);
    }
    try {
        check_gates(c.model, c.params);
    } catch (const std::domain_error& e) {
        fail("params", std::string(e.what()) + " for model " + to_string(c.model));
    }

    if (j.contains("target")) {
        try {
            c.target = parse_target_space(get_string(j, "", "target", "GLPlus"));
        } catch (const std::exception& e) {
            fail("target", e.what());
        }
    }

    if (!j.contains("channels"))
        fail("channels", "missing");
    if (c.dimension() == 2)
        parse_planar_channels(j.at("channels"), c);
    else
        parse_spatial_channels(j.at("channels"), c);

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (c.dimension() == 2) {
            check_keys(g, "grid", {"X", "h", "q_lo", "q_hi", "q_h"});
            c.grid.X = get_number(g, "grid", "X", c.grid.X);
            c.grid.h = get_number(g, "grid", "h", c.grid.h);
            c.grid.q_lo = get_number(g, "grid", "q_lo", c.grid.q_lo);
            c.grid.q_hi = get_number(g, "grid", "q_hi", c.grid.q_hi);
            c.grid.q_h = get_number(g, "grid", "q_h", c.grid.q_h);
        } else {
            check_keys(g, "grid", {"frame", "lo", "hi", "count", "weight"});
            try {
                c.nd_grid.frame = parse_nd_frame(get_string(g, "grid", "frame", "shear"));
            } catch (const std::domain_error& e) {
                fail("grid.frame", e.what());
            }
            if (g.contains("lo"))
                c.nd_grid.lo = parse_triple(g.at("lo"), "grid.lo");
            if (g.contains("hi"))
                c.nd_grid.hi = parse_triple(g.at("hi"), "grid.hi");
            if (g.contains("count")) {
                const auto t = parse_triple(g.at("count"), "grid.count");
                for (int a = 0; a < 3; ++a) {
                    if (t[a] != std::floor(t[a]) || t[a] < 1)
                        fail("grid.count", "expected positive integers");
                    c.nd_grid.count[a] = static_cast<int>(t[a]);
                }
            }
            const std::string w = get_string(g, "grid", "weight", "physical");
            if (w != "physical" && w != "flat")
                fail("grid.weight", "expected physical or flat");
            c.nd_grid.weight = w == "flat" ? NdWeight::Flat : NdWeight::Physical;
        }
    }
    if (c.dimension() == 2) {
        if (!(c.grid.X > 0.0) || !(c.grid.h > 0.0) || c.grid.h >= c.grid.X)
            fail("grid", "needs 0 < h < X");
        if (!(c.grid.q_hi > c.grid.q_lo) || !(c.grid.q_h > 0.0))
            fail("grid", "needs q_lo < q_hi and q_h > 0");
    } else {
        for (int a = 0; a < 3; ++a)
            if (!(c.nd_grid.hi[a] > c.nd_grid.lo[a]))
                fail("grid", "needs hi > lo on every axis");
    }

    if (j.contains("limits")) {
        const json& l = j.at("limits");
        check_keys(l, "limits", {"max_dofs", "max_twice_spin", "max_bytes"});
        const double dofs = get_number(l, "limits", "max_dofs", static_cast<double>(c.limits.max_dofs));
        const double bytes = get_number(l, "limits", "max_bytes", static_cast<double>(c.limits.max_bytes));
        if (dofs < 1 || bytes < 1)
            fail("limits", "limits must be positive");
        c.limits.max_dofs = static_cast<std::size_t>(dofs);
        c.limits.max_bytes = static_cast<std::size_t>(bytes);
        c.limits.max_twice_spin = get_int(l, "limits", "max_twice_spin", c.limits.max_twice_spin);
    }

    if (j.contains("potentials")) {
        const json& p = j.at("potentials");
        check_keys(p, "potentials", {"dilatation", "shear"});
        if (p.contains("dilatation"))
            c.v_dil = parse_potential(p.at("dilatation"), "potentials.dilatation");
        if (p.contains("shear"))
            c.v_sh = parse_potential(p.at("shear"), "potentials.shear");
    }

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        check_keys(s, "solver", {"count", "form", "q_sector", "levels"});
        c.count = get_int(s, "solver", "count", c.count);
        const std::string form = get_string(s, "solver", "form", "weighted");
        if (form != "weighted" && form != "symmetrized")
            fail("solver.form", "expected weighted or symmetrized");
        c.form = form == "weighted" ? Form::Weighted : Form::Symmetrized;
        if (s.contains("q_sector")) {
            if (!s.at("q_sector").is_boolean())
                fail("solver.q_sector", "expected true or false");
            c.q_sector = s.at("q_sector").get<bool>();
        }
        c.levels = get_int(s, "solver", "levels", c.levels);
    }
    if (c.count < 1 || (c.dimension() == 3 && c.count > 10))
        fail("solver.count", c.dimension() == 3 ? "must lie in [1, 10] for n = 3" : "must be at least 1");
    if (c.levels < 3)
        fail("solver.levels", "a convergence study needs at least 3 levels");

    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        check_keys(o, "outputs", {"spectrum", "scan", "convergence", "manifest", "descriptors"});
        c.outputs.spectrum = get_string(o, "outputs", "spectrum", c.outputs.spectrum);
        c.outputs.scan = get_string(o, "outputs", "scan", c.outputs.scan);
        c.outputs.convergence = get_string(o, "outputs", "convergence", c.outputs.convergence);
        c.outputs.manifest = get_string(o, "outputs", "manifest", c.outputs.manifest);
        if (o.contains("descriptors")) {
            if (!o.at("descriptors").is_boolean())
                fail("outputs.descriptors", "expected true or false");
            c.outputs.descriptors = o.at("descriptors").get<bool>();
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            fail("seed", "expected a non-negative integer");
        if (j.at("seed").is_number_integer() && j.at("seed").get<long long>() < 0)
            fail("seed", "expected a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    return c;
}

json to_json(const RunConfig& c)
{
    json j;
    j["model"] = to_string(c.model);
    j["dimension"] = c.dimension();
    j["params"] = {{"I", c.params.I}, {"A", c.params.A}, {"B", c.params.B}, {"hbar", c.params.hbar}};
    if (c.dimension() == 2) {
        json ch = json::array();
        for (const auto& [m, n] : c.planar_channels)
            ch.push_back({m, n});
        j["channels"] = ch;
        j["grid"] = {{"X", c.grid.X}, {"h", c.grid.h}, {"q_lo", c.grid.q_lo}, {"q_hi", c.grid.q_hi}, {"q_h", c.grid.q_h}};
    } else {
        j["target"] = to_string(c.target);
        json ch = json::array();
        for (const auto& [a, b] : c.spatial_channels)
            ch.push_back({label_text(a), label_text(b)});
        j["channels"] = ch;
        const auto& g = c.nd_grid;
        j["grid"] = {{"frame", to_string(g.frame)},
                     {"lo", g.lo},
                     {"hi", g.hi},
                     {"count", g.count},
                     {"weight", g.weight == NdWeight::Flat ? "flat" : "physical"}};
        j["limits"] = {{"max_dofs", c.limits.max_dofs},
                       {"max_twice_spin", c.limits.max_twice_spin},
                       {"max_bytes", c.limits.max_bytes}};
    }
    j["potentials"] = {{"dilatation", potential_json(c.v_dil)}, {"shear", potential_json(c.v_sh)}};
    j["solver"] = {{"count", c.count},
                   {"form", c.form == Form::Weighted ? "weighted" : "symmetrized"},
                   {"q_sector", c.q_sector},
                   {"levels", c.levels}};
    j["outputs"] = {{"spectrum", c.outputs.spectrum},
                    {"scan", c.outputs.scan},
                    {"convergence", c.outputs.convergence},
                    {"manifest", c.outputs.manifest},
                    {"descriptors", c.outputs.descriptors}};
    j["seed"] = c.seed;
    return j;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("config: cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
    // a run manifest carries the configuration it was produced from
    if (j.is_object() && j.contains("config") && j.contains("tool"))
        return parse_config(j.at("config"));
    return parse_config(j);
}

} // namespace affrigid::app
