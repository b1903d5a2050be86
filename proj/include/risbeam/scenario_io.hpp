#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "risbeam/errors.hpp"
#include "risbeam/scenario.hpp"

// Scenario files are INI-style text:
//
//   [section]
//   key = value      # comment
//
// Units live in key names (freq_hz, spacing_m, ...). Vectors are "x, y, z";
// the four Tx patches are four vectors separated by ';'.

namespace risbeam {

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_vec(const Vec3& v)
{
    return format_double(v.x) + ", " + format_double(v.y) + ", " + format_double(v.z);
}

struct Entry {
    std::string value;
    int line = 0;
};

class KeyReader {
public:
    explicit KeyReader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const Entry& require(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ScenarioError("missing required key `" + key + "`");
        used_.insert(key);
        return it->second;
    }

    std::optional<Entry> optional(const std::string& key)
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    double real(const std::string& key) { return parse_real(key, require(key)); }

    int integer(const std::string& key)
    {
        const auto& e = require(key);
        int v = 0;
        const auto s = trim(e.value);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            fail(key, e, "expected an integer");
        return v;
    }

    Vec3 vec(const std::string& key) { return parse_vec(key, require(key)); }

    std::string text(const std::string& key) { return std::string(trim(require(key).value)); }

    static double parse_real(const std::string& key, const Entry& e) { return parse_real(key, e, e.value); }

    static double parse_real(const std::string& key, const Entry& e, std::string_view token)
    {
        const auto s = trim(token);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
            fail(key, e, "expected a real number, got '" + std::string(s) + "'");
        if (!std::isfinite(v))
            fail(key, e, "value must be finite");
        return v;
    }

    static Vec3 parse_vec(const std::string& key, const Entry& e, std::string_view token)
    {
        const auto parts = split(token, ',');
        if (parts.size() != 3)
            fail(key, e, "expected three comma-separated components");
        return {parse_real(key, e, parts[0]), parse_real(key, e, parts[1]), parse_real(key, e, parts[2])};
    }

    static Vec3 parse_vec(const std::string& key, const Entry& e) { return parse_vec(key, e, e.value); }

    [[noreturn]] static void fail(const std::string& key, const Entry& e, const std::string& what)
    {
        throw ScenarioError("line " + std::to_string(e.line) + ": key `" + key + "`: " + what);
    }

    void reject_unused() const
    {
        for (const auto& [key, entry] : entries_)
            if (!used_.count(key))
                throw ScenarioError("line " + std::to_string(entry.line) + ": unknown key `" + key + "`");
    }

private:
    std::map<std::string, Entry> entries_;
    std::set<std::string> used_;
};

inline const char* mode_name(RunMode m)
{
    switch (m) {
    case RunMode::target_sweep: return "target-sweep";
    case RunMode::rx_sweep: return "rx-sweep";
    case RunMode::optimize_single: return "optimize-single";
    case RunMode::compare_near_far: return "compare-near-far";
    case RunMode::brute_check: return "brute-check";
    }
    return "?";
}

} // namespace detail

inline std::string to_string(RunMode m) { return detail::mode_name(m); }

inline std::optional<RunMode> parse_run_mode(std::string_view s)
{
    for (RunMode m : {RunMode::target_sweep, RunMode::rx_sweep, RunMode::optimize_single, RunMode::compare_near_far,
                      RunMode::brute_check})
        if (s == detail::mode_name(m))
            return m;
    return std::nullopt;
}

inline Scenario parse_scenario(std::string_view text)
{
    using detail::Entry;
    using detail::KeyReader;
    using detail::trim;

    static const std::set<std::string> sections{"scenario", "rf", "ris", "tx", "rx", "grid", "optimizer", "run"};

    std::map<std::string, Entry> entries;
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ScenarioError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!sections.count(section))
                throw ScenarioError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ScenarioError("line " + std::to_string(line_no) + ": expected `key = value`");
        if (section.empty())
            throw ScenarioError("line " + std::to_string(line_no) + ": key outside of any section");
        const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
        if (entries.count(key))
            throw ScenarioError("line " + std::to_string(line_no) + ": duplicate key `" + key + "`");
        entries[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
    }

    KeyReader r(std::move(entries));
    Scenario s;

    if (auto name = r.optional("scenario.name"))
        s.name = std::string(trim(name->value));

    {
        const Entry& e = r.require("rf.freq_hz");
        const double f = KeyReader::parse_real("rf.freq_hz", e);
        if (!(f > 0.0))
            KeyReader::fail("rf.freq_hz", e, "carrier frequency must be positive (Hz)");
        s.rf = RfParams::make(f, r.real("rf.tx_gain_dbi"), r.real("rf.rx_gain_dbi"), r.real("rf.tx_power_dbm"));
    }

    s.layout.modules_across = r.integer("ris.modules_across");
    s.layout.modules_down = r.integer("ris.modules_down");
    s.layout.cells_per_module_side = r.integer("ris.cells_per_module_side");
    s.layout.module_width = r.real("ris.module_width_m");
    s.layout.module_height = r.real("ris.module_height_m");
    s.pose.origin = r.vec("ris.center_m");
    s.pose.right = r.vec("ris.right");
    s.pose.up = r.vec("ris.up");
    s.pose.normal = r.vec("ris.normal");

    {
        const bool has_pos = r.has("tx.position_m");
        const bool has_patches = r.has("tx.patch_positions_m");
        const bool has_boresight = r.has("tx.boresight_distance_m");
        const int given = int(has_pos) + int(has_patches) + int(has_boresight);
        if (given == 0)
            throw ScenarioError(
                "missing required key `tx.position_m` (or `tx.patch_positions_m` / `tx.boresight_distance_m`)");
        if (given > 1)
            throw ScenarioError("section [tx]: give exactly one of position_m, patch_positions_m, boresight_distance_m");
        if (has_pos) {
            s.tx = TxAtPosition{r.vec("tx.position_m")};
        } else if (has_patches) {
            const Entry& e = r.require("tx.patch_positions_m");
            const auto parts = detail::split(e.value, ';');
            if (parts.size() != 4)
                KeyReader::fail("tx.patch_positions_m", e, "expected exactly four ';'-separated positions");
            TxFromPatches p{};
            for (std::size_t k = 0; k < 4; ++k)
                p.patches[k] = KeyReader::parse_vec("tx.patch_positions_m", e, parts[k]);
            s.tx = p;
        } else {
            s.tx = TxOnBoresight{r.real("tx.boresight_distance_m")};
        }
    }

    s.rx = r.vec("rx.position_m");

    s.grid.origin = r.vec("grid.origin_m");
    s.grid.axis_u = r.vec("grid.axis_u");
    s.grid.axis_v = r.vec("grid.axis_v");
    s.grid.count_u = r.integer("grid.count_u");
    s.grid.count_v = r.integer("grid.count_v");
    s.grid.spacing = r.real("grid.spacing_m");

    {
        const auto list = r.optional("optimizer.hypotheses_rad");
        const auto count = r.optional("optimizer.hypothesis_count");
        if (list && count)
            throw ScenarioError("line " + std::to_string(count->line) +
                                ": give either optimizer.hypotheses_rad or optimizer.hypothesis_count, not both");
        if (list) {
            s.hypotheses.values.clear();
            for (auto token : detail::split(list->value, ','))
                s.hypotheses.values.push_back(KeyReader::parse_real("optimizer.hypotheses_rad", *list, token));
        } else if (count) {
            const int t = r.integer("optimizer.hypothesis_count");
            if (t <= 0)
                KeyReader::fail("optimizer.hypothesis_count", *count, "must be positive");
            s.hypotheses = HypothesisSet::evenly_spaced(t);
        }
    }
    if (auto amp = r.optional("optimizer.amplitude_model")) {
        const auto v = trim(amp->value);
        if (v == "printed")
            s.amplitude = AmplitudeModel::printed;
        else if (v == "power")
            s.amplitude = AmplitudeModel::power;
        else
            KeyReader::fail("optimizer.amplitude_model", *amp, "expected `printed` or `power`");
    }

    if (auto mode = r.optional("run.mode")) {
        const auto m = parse_run_mode(trim(mode->value));
        if (!m)
            KeyReader::fail("run.mode", *mode, "unknown mode '" + mode->value + "'");
        s.run.mode = *m;
    }
    if (r.has("run.workers"))
        s.run.workers = r.integer("run.workers");
    if (auto out = r.optional("run.out_dir"))
        s.run.out_dir = std::string(trim(out->value));

    r.reject_unused();

    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("validation: ") + e.what());
    }
    return s;
}

/// Canonical text form. With include_run = false the [run] section is omitted, which is
/// the form the provenance digest is computed over.
inline std::string serialize_scenario(const Scenario& s, bool include_run = true)
{
    using detail::format_double;
    using detail::format_vec;
    std::ostringstream o;
    o << "[scenario]\n";
    if (!s.name.empty())
        o << "name = " << s.name << "\n";
    o << "\n[rf]\n"
      << "freq_hz = " << format_double(s.rf.carrier_freq) << "\n"
      << "tx_gain_dbi = " << format_double(s.rf.tx_gain_db) << "\n"
      << "rx_gain_dbi = " << format_double(s.rf.rx_gain_db) << "\n"
      << "tx_power_dbm = " << format_double(s.rf.tx_power_dbm) << "\n";
    o << "\n[ris]\n"
      << "modules_across = " << s.layout.modules_across << "\n"
      << "modules_down = " << s.layout.modules_down << "\n"
      << "cells_per_module_side = " << s.layout.cells_per_module_side << "\n"
      << "module_width_m = " << format_double(s.layout.module_width) << "\n"
      << "module_height_m = " << format_double(s.layout.module_height) << "\n"
      << "center_m = " << format_vec(s.pose.origin) << "\n"
      << "right = " << format_vec(s.pose.right) << "\n"
      << "up = " << format_vec(s.pose.up) << "\n"
      << "normal = " << format_vec(s.pose.normal) << "\n";
    o << "\n[tx]\n";
    if (const auto* p = std::get_if<TxAtPosition>(&s.tx)) {
        o << "position_m = " << format_vec(p->position) << "\n";
    } else if (const auto* q = std::get_if<TxFromPatches>(&s.tx)) {
        o << "patch_positions_m = ";
        for (std::size_t k = 0; k < 4; ++k)
            o << (k ? "; " : "") << format_vec(q->patches[k]);
        o << "\n";
    } else {
        o << "boresight_distance_m = " << format_double(std::get<TxOnBoresight>(s.tx).distance_m) << "\n";
    }
    o << "\n[rx]\nposition_m = " << format_vec(s.rx) << "\n";
    o << "\n[grid]\n"
      << "origin_m = " << format_vec(s.grid.origin) << "\n"
      << "axis_u = " << format_vec(s.grid.axis_u) << "\n"
      << "axis_v = " << format_vec(s.grid.axis_v) << "\n"
      << "count_u = " << s.grid.count_u << "\n"
      << "count_v = " << s.grid.count_v << "\n"
      << "spacing_m = " << format_double(s.grid.spacing) << "\n";
    o << "\n[optimizer]\nhypotheses_rad = ";
    for (std::size_t t = 0; t < s.hypotheses.values.size(); ++t)
        o << (t ? ", " : "") << format_double(s.hypotheses.values[t]);
    o << "\namplitude_model = " << (s.amplitude == AmplitudeModel::printed ? "printed" : "power") << "\n";
    if (include_run)
        o << "\n[run]\n"
          << "mode = " << to_string(s.run.mode) << "\n"
          << "workers = " << s.run.workers << "\n"
          << "out_dir = " << s.run.out_dir << "\n";
    return o.str();
}

/// FNV-1a 64 over the canonical physics description (run settings excluded), as 16 hex digits.
inline std::string scenario_digest(const Scenario& s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : serialize_scenario(s, false)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

} // namespace risbeam
