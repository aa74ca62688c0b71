#pragma once

// JSON and CSV serialization for library types, plus the run-metadata block
// (command line, seed, version, wall clock) that every CLI output embeds.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilocal.hpp"
#include "circuit.hpp"
#include "correlators.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "inequalities.hpp"
#include "symmetric.hpp"
#include "tetra.hpp"
#include "version.hpp"

namespace ejmnet::io {

using json = nlohmann::ordered_json;

// Fixed CSV dialect: 12 significant digits, '.' decimal separator (the
// process never changes the C locale), comma separator, LF line endings.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
    return out;
}

struct RunMeta {
    std::string commandLine;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::string wallClock;
};

inline std::string wall_clock_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Comment block prepended to CSV outputs. The wall clock is the only line
// that may differ between reruns with identical configuration.
inline std::string csv_meta_block(const RunMeta& meta) {
    std::string out;
    out += "# command: " + meta.commandLine + "\n";
    out += "# seed: " + std::to_string(meta.seed) + "\n";
    out += "# version: " + meta.version + "\n";
    out += "# wallclock: " + meta.wallClock + "\n";
    return out;
}

inline json json_meta(const RunMeta& meta) {
    json j;
    j["command"] = meta.commandLine;
    j["seed"] = meta.seed;
    j["version"] = meta.version;
    j["wallclock"] = meta.wallClock;
    return j;
}

// ---------------------------------------------------------------------------
// Correlators

inline json to_json(const CorrelatorSet& c) {
    json j;
    j["A"] = c.A;
    j["B"] = c.B;
    j["C"] = c.C;
    j["AB"] = c.AB;
    j["BC"] = c.BC;
    j["AC"] = c.AC;
    j["ABC"] = c.ABC;
    return j;
}

inline CorrelatorSet correlator_set_from_json(const json& j) {
    CorrelatorSet c;
    try {
        j.at("A").get_to(c.A);
        j.at("B").get_to(c.B);
        j.at("C").get_to(c.C);
        j.at("AB").get_to(c.AB);
        j.at("BC").get_to(c.BC);
        j.at("AC").get_to(c.AC);
        j.at("ABC").get_to(c.ABC);
    } catch (const json::exception& e) {
        throw ValidityError(std::string("malformed correlator JSON: ") + e.what());
    }
    return c;
}

// ---------------------------------------------------------------------------
// Distributions

inline json to_json(const TripartiteDistribution& dist) {
    json j;
    j["p"] = dist.p;
    return j;
}

inline TripartiteDistribution distribution_from_json(const json& j) {
    TripartiteDistribution dist;
    try {
        j.at("p").get_to(dist.p);
    } catch (const json::exception& e) {
        throw ValidityError(std::string("malformed distribution JSON: ") + e.what());
    }
    return dist;
}

// Rows are (x, z, a, b, c, p) with settings 1..3, outcomes a,c in {+1,-1}
// and b in 1..4.
inline std::string distribution_to_csv(const TripartiteDistribution& dist) {
    std::string out = "x,z,a,b,c,p\n";
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        out += csv_join({std::to_string(x + 1), std::to_string(z + 1),
                                         a == 0 ? "+1" : "-1", std::to_string(b + 1),
                                         c == 0 ? "+1" : "-1",
                                         format_double(dist.at(x, z, a, b, c))});
                    }
    return out;
}

namespace detail {

inline int parse_int_field(const std::string& s, int lo, int hi, const char* what,
                           std::size_t line_no) {
    int v = 0;
    try {
        std::size_t pos = 0;
        v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "line %zu: cannot parse %s value '%s'", line_no, what,
                      s.c_str());
        throw ValidityError(msg);
    }
    if (v < lo || v > hi) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "line %zu: %s value %d outside [%d, %d]", line_no, what,
                      v, lo, hi);
        throw ValidityError(msg);
    }
    return v;
}

inline int parse_sign_field(const std::string& s, const char* what, std::size_t line_no) {
    if (s == "+1" || s == "1") return 0;
    if (s == "-1") return 1;
    char msg[160];
    std::snprintf(msg, sizeof msg, "line %zu: %s outcome '%s' is not +1 or -1", line_no, what,
                  s.c_str());
    throw ValidityError(msg);
}

}  // namespace detail

inline TripartiteDistribution distribution_from_csv(std::istream& in) {
    TripartiteDistribution dist;
    dist.p.fill(0.0);
    std::array<bool, TripartiteDistribution::kSize> seen{};
    std::string line;
    std::size_t line_no = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            if (line.find_first_not_of("xzabcp, \t") == std::string::npos) continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "line %zu: expected 6 comma-separated fields, got %zu",
                          line_no, fields.size());
            throw ValidityError(msg);
        }
        int x = detail::parse_int_field(fields[0], 1, 3, "x", line_no) - 1;
        int z = detail::parse_int_field(fields[1], 1, 3, "z", line_no) - 1;
        int a = detail::parse_sign_field(fields[2], "a", line_no);
        int b = detail::parse_int_field(fields[3], 1, 4, "b", line_no) - 1;
        int c = detail::parse_sign_field(fields[4], "c", line_no);
        double p = 0.0;
        try {
            std::size_t pos = 0;
            p = std::stod(fields[5], &pos);
            if (pos != fields[5].size()) throw std::invalid_argument(fields[5]);
        } catch (const std::exception&) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "line %zu: cannot parse probability '%s'", line_no,
                          fields[5].c_str());
            throw ValidityError(msg);
        }
        std::size_t idx = TripartiteDistribution::index(x, z, a, b, c);
        if (seen[idx]) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "line %zu: duplicate entry for (x=%d,z=%d,a=%s,b=%d,c=%s)",
                          line_no, x + 1, z + 1, a == 0 ? "+1" : "-1", b + 1,
                          c == 0 ? "+1" : "-1");
            throw ValidityError(msg);
        }
        seen[idx] = true;
        dist.p[idx] = p;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "distribution file is missing entry %zu of %zu", i,
                          seen.size());
            throw ValidityError(msg);
        }
    }
    return dist;
}

inline TripartiteDistribution distribution_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidityError("cannot open distribution file: " + path);
    char first = 0;
    in >> std::ws;
    first = static_cast<char>(in.peek());
    in.seekg(0);
    if (first == '{') {
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ValidityError(std::string("malformed JSON in ") + path + ": " + e.what());
        }
        return distribution_from_json(j.contains("p") ? j : j.at("distribution"));
    }
    return distribution_from_csv(in);
}

// ---------------------------------------------------------------------------
// Bilocal models

inline json to_json(const BilocalModel& m) {
    json j;
    json labels = json::array();
    for (int i = 0; i < 8; ++i) labels.push_back(local_variable_label(i));
    j["labels"] = labels;
    j["q1"] = m.q1;
    j["q2"] = m.q2;
    j["response"] = m.response;
    return j;
}

inline BilocalModel bilocal_model_from_json(const json& j) {
    BilocalModel m;
    try {
        j.at("q1").get_to(m.q1);
        j.at("q2").get_to(m.q2);
        j.at("response").get_to(m.response);
    } catch (const json::exception& e) {
        throw ValidityError(std::string("malformed bilocal model JSON: ") + e.what());
    }
    m.validate();
    return m;
}

inline json to_json(const SectorResponse& s) {
    json j;
    j["qSame"] = s.qSame;
    j["qAlpha"] = s.qAlpha;
    j["qGamma"] = s.qGamma;
    return j;
}

inline json to_json(const SymmetricModelParams& p) {
    json j;
    j["qPlus1"] = p.qPlus1;
    j["qPlus2"] = p.qPlus2;
    json sectors = json::array();
    for (int ia = 0; ia < 2; ++ia)
        for (int ig = 0; ig < 2; ++ig) {
            json s = to_json(p.sector[ia][ig]);
            s["tauAlpha"] = ia == 0 ? 1 : -1;
            s["tauGamma"] = ig == 0 ? 1 : -1;
            sectors.push_back(s);
        }
    j["sectors"] = sectors;
    return j;
}

inline json to_json(const FitResult& r) {
    json j;
    j["feasible"] = r.feasible;
    j["residual"] = r.residual;
    j["itersUsed"] = r.itersUsed;
    j["restartsUsed"] = r.restartsUsed;
    j["model"] = to_json(r.model);
    return j;
}

// ---------------------------------------------------------------------------
// Inequality reports

inline json to_json(const StzValues& v) {
    json j;
    j["S"] = v.S;
    j["T"] = v.T;
    j["Z"] = v.Z;
    j["S_AB"] = v.S_AB;
    j["S_BC"] = v.S_BC;
    j["R_plus"] = v.R_plus;
    j["R_minus"] = v.R_minus;
    return j;
}

inline json to_json(const BellReport& r) {
    json j;
    j["value"] = r.value;
    j["bound"] = r.bound;
    j["violated"] = r.violated;
    return j;
}

inline json to_json(const SliceMargin& m) {
    json j;
    j["expression"] = m.name;
    j["value"] = m.value;
    j["bound"] = m.bound;
    j["margin"] = m.margin;
    j["violated"] = m.violated;
    return j;
}

inline json to_json(const BprimeReport& r) {
    json j;
    j["value"] = r.value;
    j["bilocalBound"] = r.bilocalBound;
    j["quantumBound"] = r.quantumBound;
    j["quantumBoundApplies"] = r.quantumBoundApplies;
    j["violatesBilocal"] = r.violatesBilocal;
    j["violatesQuantum"] = r.violatesQuantum;
    return j;
}

inline json to_json(const BprimeLinReport& r) {
    json j;
    j["linValue"] = r.linValue;
    j["concavityBound"] = r.concavityBound;
    return j;
}

// ---------------------------------------------------------------------------
// Circuit verdicts

inline json to_json(const CircuitVerdict& v) {
    json j;
    j["theta"] = v.theta;
    j["permutation"] = v.permutation;
    j["maxInfidelity"] = v.maxInfidelity;
    j["pass"] = v.pass;
    j["wiresSwapped"] = v.wiresSwapped;
    return j;
}

// ---------------------------------------------------------------------------
// Output plumbing

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidityError("cannot open output file: " + path);
    out << content;
    if (!out) throw ValidityError("failed writing output file: " + path);
}

}  // namespace ejmnet::io
