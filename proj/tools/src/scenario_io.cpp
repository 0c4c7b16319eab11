// SPDX-License-Identifier: Apache-2.0
//
// risloc - error bounds and RIS phase optimization for multi-RIS mmWave positioning
// Copyright (C) 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risloc/cli/scenario_io.hpp"

#include "risloc/errors.hpp"
#include "risloc/geometry.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

namespace risloc::cli
{

namespace
{

using nlohmann::json;

constexpr double kDefaultTxPowerDbm = 30.0;
constexpr double kDefaultRotation = kPi / 4.0;

// Field reader that tracks the JSON path for error messages and rejects
// keys nobody asked about.
class Object
{
public:
    Object(const json &node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object())
            fail(path_, "expected an object");
    }

    void allow_only(std::initializer_list<const char *> keys) const
    {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto &item : node_.items())
            if (!allowed.count(item.key()))
                fail(at(item.key()), "unknown field");
    }

    bool has(const char *key) const { return node_.contains(key); }
    const json &raw(const char *key) const
    {
        if (!has(key))
            fail(at(key), "missing required field");
        return node_.at(key);
    }
    std::string at(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    double number(const char *key) const { return as_number(raw(key), at(key)); }
    int integer(const char *key) const { return as_integer(raw(key), at(key)); }
    std::string text(const char *key) const
    {
        const json &v = raw(key);
        if (!v.is_string())
            fail(at(key), "expected a string");
        return v.get<std::string>();
    }
    Eigen::Vector3d vec3(const char *key) const
    {
        const json &v = raw(key);
        const std::string where = at(key);
        if (!v.is_array() || v.size() != 3)
            fail(where, "expected an array of 3 numbers");
        return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]"), as_number(v[2], where + "[2]")};
    }

    [[noreturn]] static void fail(const std::string &where, const std::string &what)
    {
        throw SchemaError(where + ": " + what);
    }

    static double as_number(const json &v, const std::string &where)
    {
        if (!v.is_number())
            fail(where, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            fail(where, "expected a finite number");
        return x;
    }

    static int as_integer(const json &v, const std::string &where)
    {
        if (!v.is_number_integer())
            fail(where, "expected an integer");
        const auto x = v.get<long long>();
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
            fail(where, "integer out of range");
        return static_cast<int>(x);
    }

private:
    const json &node_;
    std::string path_;
};

RisPanel parse_panel(const json &node, const std::string &path)
{
    const Object o(node, path);
    o.allow_only({"position_m", "side", "pathloss_exponent", "shadowing_sigma_db"});
    RisPanel panel;
    panel.position = o.vec3("position_m");
    panel.side = o.integer("side");
    panel.pathloss_exponent = o.number("pathloss_exponent");
    panel.shadowing_sigma_db = o.number("shadowing_sigma_db");
    return panel;
}

} // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

LoadedScenario parse_scenario(std::string_view text, std::string_view fallback_id)
{
    json doc;
    try
    {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e)
    {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }

    LoadedScenario out;
    Scenario &s = out.scenario;
    const Object root(doc, "");
    root.allow_only({"schema_version", "id", "notes", "bs_position_m", "mu", "ris", "radio", "pathloss",
                     "ris_amplitude", "gains"});

    const int version = root.integer("schema_version");
    if (version != kScenarioSchemaVersion)
        Object::fail("schema_version", "unsupported version " + std::to_string(version));
    out.id = root.has("id") ? root.text("id") : std::string(fallback_id);
    if (root.has("notes"))
        (void)root.text("notes");

    s.bs = root.vec3("bs_position_m");

    {
        const Object mu(root.raw("mu"), "mu");
        mu.allow_only({"position_m", "rotation_rad"});
        s.mu = mu.vec3("position_m");
        if (mu.has("rotation_rad"))
        {
            s.rotation = mu.number("rotation_rad");
        }
        else
        {
            s.rotation = kDefaultRotation;
            out.warnings.push_back("mu.rotation_rad not set; using default pi/4");
        }
    }

    {
        const json &list = root.raw("ris");
        if (!list.is_array())
            Object::fail("ris", "expected an array");
        for (std::size_t k = 0; k < list.size(); ++k)
            s.ris.push_back(parse_panel(list[k], "ris[" + std::to_string(k) + "]"));
    }

    {
        const Object r(root.raw("radio"), "radio");
        r.allow_only({"carrier_hz", "bandwidth_hz", "subcarriers", "tx_antennas", "rx_antennas", "beams",
                      "element_spacing_m", "tx_power_dbm", "noise_psd_dbm_per_hz"});
        auto &radio = s.radio;
        radio.carrier_hz = r.number("carrier_hz");
        radio.bandwidth_hz = r.number("bandwidth_hz");
        radio.subcarriers = r.integer("subcarriers");
        radio.tx_antennas = r.integer("tx_antennas");
        radio.rx_antennas = r.integer("rx_antennas");
        if (r.has("beams"))
            radio.beams = r.integer("beams");
        if (r.has("element_spacing_m"))
            radio.element_spacing_m = r.number("element_spacing_m");
        double tx_dbm = kDefaultTxPowerDbm;
        if (r.has("tx_power_dbm"))
            tx_dbm = r.number("tx_power_dbm");
        else
            out.warnings.push_back("radio.tx_power_dbm not set; using default 30 dBm");
        radio.tx_power_w = dbm_to_watts(tx_dbm);
        radio.noise_psd_w_per_hz = dbm_to_watts(r.number("noise_psd_dbm_per_hz"));
    }

    {
        const Object pl(root.raw("pathloss"), "pathloss");
        pl.allow_only({"los_exponent", "los_shadowing_sigma_db", "shadowing", "shadowing_seed"});
        s.pathloss.los_exponent = pl.number("los_exponent");
        s.pathloss.los_shadowing_sigma_db = pl.number("los_shadowing_sigma_db");
        const std::string mode = pl.has("shadowing") ? pl.text("shadowing") : "deterministic";
        if (mode == "deterministic")
            s.pathloss.shadowing = Shadowing::Deterministic;
        else if (mode == "sampled")
            s.pathloss.shadowing = Shadowing::Sampled;
        else
            Object::fail("pathloss.shadowing", "expected \"deterministic\" or \"sampled\"");
        if (pl.has("shadowing_seed"))
        {
            const json &seed = pl.raw("shadowing_seed");
            if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
                Object::fail("pathloss.shadowing_seed", "expected a non-negative integer");
            s.pathloss.shadowing_seed = seed.get<std::uint64_t>();
        }
    }

    if (root.has("ris_amplitude"))
        s.ris_amplitude = root.number("ris_amplitude");

    if (root.has("gains"))
    {
        const json &list = root.raw("gains");
        if (!list.is_array())
            Object::fail("gains", "expected an array of [re, im] pairs");
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            const std::string where = "gains[" + std::to_string(i) + "]";
            if (!list[i].is_array() || list[i].size() != 2)
                Object::fail(where, "expected [re, im]");
            s.gains.emplace_back(Object::as_number(list[i][0], where + "[0]"),
                                 Object::as_number(list[i][1], where + "[1]"));
        }
    }

    validate(s);
    try
    {
        (void)compute_geometry(s);
    }
    catch (const DegenerateGeometry &e)
    {
        throw InvariantError(std::string("DegenerateGeometry: ") + e.what());
    }
    return out;
}

LoadedScenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading scenario file " + path.string());
    return parse_scenario(buf.str(), path.stem().string());
}

Scenario reference_scenario()
{
    Scenario s;
    s.bs = {0.0, 0.0, 40.0};
    s.mu = {90.0, 30.0, 0.0};
    s.rotation = kDefaultRotation;
    for (const Eigen::Vector3d &pos : {Eigen::Vector3d(60, 45, 15), Eigen::Vector3d(50, 50, 5),
                                      Eigen::Vector3d(40, 20, 10)})
    {
        RisPanel panel;
        panel.position = pos;
        panel.side = 16;
        panel.pathloss_exponent = 2.2;
        panel.shadowing_sigma_db = 7.0;
        s.ris.push_back(panel);
    }
    s.radio.carrier_hz = 4.9e9;
    s.radio.bandwidth_hz = 20e6;
    s.radio.subcarriers = 128;
    s.radio.tx_antennas = 32;
    s.radio.rx_antennas = 8;
    s.radio.tx_power_w = dbm_to_watts(kDefaultTxPowerDbm);
    s.radio.noise_psd_w_per_hz = dbm_to_watts(-174.0);
    s.pathloss.los_exponent = 3.7;
    s.pathloss.los_shadowing_sigma_db = 4.0;
    s.pathloss.shadowing = Shadowing::Deterministic;
    return s;
}

} // namespace risloc::cli
