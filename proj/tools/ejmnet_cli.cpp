// Command-line front end: every pipeline of the library exposed as a
// reproducible run that emits CSV or JSON with an embedded metadata block.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ejmnet/ejmnet.hpp>

namespace {

using ejmnet::io::json;

std::string join_command_line(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

// Shared flags; each subcommand binds the subset it uses.
struct CommonOpts {
    std::string output = "-";
    std::string format = "csv";
    std::string configPath;
    std::uint64_t seed = 1;
    int threads = 0;
    int restarts = 64;
    int maxIters = 2000;
    double tolResidual = 1e-5;
    std::string parametrization = "direct";
};

struct TargetOpts {
    double theta = 0.0;
    double v1 = 1.0;
    double v2 = 1.0;
    std::string settings = "pauli";
    std::vector<double> blochA;
    std::vector<double> blochC;
    std::string inputPath;
};

ejmnet::SettingTriple settings_from_bloch(const std::vector<double>& flat) {
    if (flat.size() != 9)
        throw ejmnet::UsageError("explicit Bloch settings need 9 numbers (three unit vectors)");
    ejmnet::SettingTriple triple;
    for (int i = 0; i < 3; ++i)
        triple[static_cast<std::size_t>(i)] = ejmnet::make_setting(
            {flat[static_cast<std::size_t>(3 * i)], flat[static_cast<std::size_t>(3 * i + 1)],
             flat[static_cast<std::size_t>(3 * i + 2)]});
    return triple;
}

ejmnet::SettingTriple wing_settings(const TargetOpts& t, bool aliceWing) {
    const std::vector<double>& flat = aliceWing ? t.blochA : t.blochC;
    if (!flat.empty()) return settings_from_bloch(flat);
    return ejmnet::settings_preset(t.settings);
}

ejmnet::FitOptions fit_options(const CommonOpts& c) {
    ejmnet::FitOptions opts;
    opts.restarts = c.restarts;
    opts.maxIters = c.maxIters;
    opts.tolResidual = c.tolResidual;
    opts.seed = c.seed;
    opts.threads = c.threads;
    if (c.parametrization == "direct")
        opts.parametrization = ejmnet::Parametrization::direct;
    else if (c.parametrization == "symmetric14")
        opts.parametrization = ejmnet::Parametrization::symmetric14;
    else
        throw ejmnet::UsageError("unknown parametrization: " + c.parametrization);
    opts.validate();
    return opts;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.output == "-")
        std::cout << text;
    else
        ejmnet::io::write_text_file(c.output, text);
}

void emit_json(const CommonOpts& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::string fmt(double v) { return ejmnet::io::format_double(v); }

// --config JSON files mirror the long flag names. Values are applied before
// parsing, so explicit command-line flags always win.
json load_config_json(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            path = arg.substr(9);
    }
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ejmnet::UsageError("cannot open config file: " + path);
    try {
        json j;
        in >> j;
        if (!j.is_object()) throw ejmnet::UsageError("config file must hold a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw ejmnet::UsageError(std::string("malformed config file ") + path + ": " + e.what());
    }
}

template <typename T>
void cfg(const json& j, const char* key, T& slot) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(slot);
    } catch (const json::exception&) {
        throw ejmnet::UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

void cfg_list(const json& j, const char* key, std::vector<double>& slot) {
    if (!j.contains(key)) return;
    if (j.at(key).is_number()) {
        slot = {j.at(key).get<double>()};
        return;
    }
    try {
        j.at(key).get_to(slot);
    } catch (const json::exception&) {
        throw ejmnet::UsageError(std::string("config key '") + key +
                                 "' must be a number or an array of numbers");
    }
}

void apply_common_config(const json& j, CommonOpts& c) {
    cfg(j, "output", c.output);
    cfg(j, "format", c.format);
    cfg(j, "seed", c.seed);
    cfg(j, "threads", c.threads);
    cfg(j, "restarts", c.restarts);
    cfg(j, "max-iters", c.maxIters);
    cfg(j, "tol", c.tolResidual);
    cfg(j, "parametrization", c.parametrization);
}

void apply_target_config(const json& j, TargetOpts& t) {
    cfg(j, "theta", t.theta);
    cfg(j, "v1", t.v1);
    cfg(j, "v2", t.v2);
    cfg(j, "settings", t.settings);
    cfg_list(j, "bloch-a", t.blochA);
    cfg_list(j, "bloch-c", t.blochC);
    cfg(j, "input", t.inputPath);
}

void add_common_flags(CLI::App* sub, CommonOpts& c) {
    sub->add_option("-o,--output", c.output, "Output path ('-' for stdout)");
    sub->add_option("--format", c.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", c.configPath, "JSON config file mirroring the flags");
    sub->add_option("--seed", c.seed, "Random seed recorded in every output");
    sub->add_option("--threads", c.threads, "Worker threads (0 = EJMNET_THREADS or hardware)");
}

void add_fit_flags(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--restarts", c.restarts, "Random restarts for the heuristic search");
    sub->add_option("--max-iters", c.maxIters, "Iteration budget per restart");
    sub->add_option("--tol", c.tolResidual, "Feasibility threshold on the residual");
    sub->add_option("--parametrization", c.parametrization, "Model parametrization")
        ->check(CLI::IsMember({"direct", "symmetric14"}));
}

void add_target_flags(CLI::App* sub, TargetOpts& t, bool with_input) {
    sub->add_option("--theta", t.theta, "Basis parameter in [0, pi/2]");
    sub->add_option("--v1", t.v1, "Visibility of the first source");
    sub->add_option("--v2", t.v2, "Visibility of the second source");
    sub->add_option("--settings", t.settings, "Measurement settings preset for both wings")
        ->check(CLI::IsMember({"pauli", "rotated"}));
    sub->add_option("--bloch-a", t.blochA,
                    "Explicit Bloch vectors for the first wing (9 numbers)")
        ->expected(9);
    sub->add_option("--bloch-c", t.blochC,
                    "Explicit Bloch vectors for the third wing (9 numbers)")
        ->expected(9);
    if (with_input)
        sub->add_option("--input", t.inputPath,
                        "Distribution file (CSV x,z,a,b,c,p or JSON) instead of theta/v1/v2");
}

ejmnet::TripartiteDistribution resolve_distribution(const TargetOpts& t, json* source) {
    if (!t.inputPath.empty()) {
        (*source)["input"] = t.inputPath;
        ejmnet::TripartiteDistribution dist = ejmnet::io::distribution_from_file(t.inputPath);
        dist.validate();
        return dist;
    }
    (*source)["theta"] = t.theta;
    (*source)["v1"] = t.v1;
    (*source)["v2"] = t.v2;
    (*source)["settings"] = t.settings;
    return ejmnet::network_distribution(t.theta, t.v1, t.v2, wing_settings(t, true),
                                        wing_settings(t, false));
}

// ---------------------------------------------------------------------------
// correlators: closed-form vs Born-rule pipeline comparison.

int run_correlators(const CommonOpts& c, const TargetOpts& t, const ejmnet::io::RunMeta& meta) {
    const ejmnet::CorrelatorSet closed = ejmnet::closed_form_correlators(t.theta, t.v1, t.v2);
    const ejmnet::TripartiteDistribution dist = ejmnet::network_distribution(
        t.theta, t.v1, t.v2, wing_settings(t, true), wing_settings(t, false));
    const ejmnet::CorrelatorSet born = ejmnet::distribution_to_correlators(dist);
    const double disc = ejmnet::max_correlator_difference(born, closed);

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        j["theta"] = t.theta;
        j["v1"] = t.v1;
        j["v2"] = t.v2;
        j["settings"] = t.settings;
        j["born"] = ejmnet::io::to_json(born);
        j["closedForm"] = ejmnet::io::to_json(closed);
        j["maxDiscrepancy"] = disc;
        emit_json(c, j);
        return 0;
    }

    std::string out = ejmnet::io::csv_meta_block(meta);
    out += "# theta: " + fmt(t.theta) + " v1: " + fmt(t.v1) + " v2: " + fmt(t.v2) +
           " settings: " + t.settings + "\n";
    out += "# max_discrepancy: " + fmt(disc) + "\n";
    out += "quantity,born,closed_form,discrepancy\n";
    auto row = [&](const std::string& name, double b, double cf) {
        out += ejmnet::io::csv_join({name, fmt(b), fmt(cf), fmt(std::abs(b - cf))});
    };
    for (int x = 0; x < 3; ++x) row("A_" + std::to_string(x + 1), born.A[x], closed.A[x]);
    for (int y = 0; y < 3; ++y) row("B_" + std::to_string(y + 1), born.B[y], closed.B[y]);
    for (int z = 0; z < 3; ++z) row("C_" + std::to_string(z + 1), born.C[z], closed.C[z]);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            row("AB_" + std::to_string(x + 1) + std::to_string(y + 1), born.AB[x][y],
                closed.AB[x][y]);
    for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
            row("BC_" + std::to_string(y + 1) + std::to_string(z + 1), born.BC[y][z],
                closed.BC[y][z]);
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z)
            row("AC_" + std::to_string(x + 1) + std::to_string(z + 1), born.AC[x][z],
                closed.AC[x][z]);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                row("ABC_" + std::to_string(x + 1) + std::to_string(y + 1) +
                        std::to_string(z + 1),
                    born.ABC[x][y][z], closed.ABC[x][y][z]);
    emit(c, out);
    return 0;
}

// ---------------------------------------------------------------------------
// scan: bilocal-set boundaries (V2crit per V1, or the symmetric diagonal).

int run_scan(const CommonOpts& c, const std::vector<double>& thetas,
             const std::string& settings_name, const std::vector<double>& v1grid, bool diagonal,
             const ejmnet::io::RunMeta& meta) {
    if (thetas.empty()) throw ejmnet::UsageError("scan needs at least one --theta value");
    const ejmnet::SettingTriple& settings = ejmnet::settings_preset(settings_name);
    const ejmnet::FitOptions opts = fit_options(c);

    json rows = json::array();
    std::string csv;

    if (diagonal) {
        csv = "theta,settings,Vcrit,residual,alwaysFeasible,neverFeasible\n";
        for (double th : thetas) {
            const ejmnet::CriticalVisibilityResult r =
                ejmnet::critical_visibility_symmetricV(th, settings, opts);
            csv += ejmnet::io::csv_join({fmt(th), settings_name, fmt(r.V), fmt(r.residual),
                                         r.alwaysFeasible ? "1" : "0",
                                         r.neverFeasible ? "1" : "0"});
            json row;
            row["theta"] = th;
            row["settings"] = settings_name;
            row["Vcrit"] = r.V;
            row["residual"] = r.residual;
            row["alwaysFeasible"] = r.alwaysFeasible;
            row["neverFeasible"] = r.neverFeasible;
            rows.push_back(row);
        }
    } else {
        if (v1grid.empty()) throw ejmnet::UsageError("scan needs a --v1 grid (or --diagonal)");
        csv =
            "theta,settings,V1,V2crit,product,residual,alwaysFeasible,neverFeasible,failed,"
            "error\n";
        for (double th : thetas) {
            const std::vector<ejmnet::BoundaryPoint> pts =
                ejmnet::boundary_scan(th, settings, v1grid, opts);
            for (const ejmnet::BoundaryPoint& p : pts) {
                csv += ejmnet::io::csv_join(
                    {fmt(th), settings_name, fmt(p.V1), fmt(p.V2crit), fmt(p.V1 * p.V2crit),
                     fmt(p.residual), p.alwaysFeasible ? "1" : "0", p.neverFeasible ? "1" : "0",
                     p.failed ? "1" : "0", p.error});
                json row;
                row["theta"] = th;
                row["settings"] = settings_name;
                row["V1"] = p.V1;
                row["V2crit"] = p.V2crit;
                row["product"] = p.V1 * p.V2crit;
                row["residual"] = p.residual;
                row["alwaysFeasible"] = p.alwaysFeasible;
                row["neverFeasible"] = p.neverFeasible;
                row["failed"] = p.failed;
                row["error"] = p.error;
                rows.push_back(row);
            }
        }
    }

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        j["rows"] = rows;
        emit_json(c, j);
    } else {
        emit(c, ejmnet::io::csv_meta_block(meta) + csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// inequalities: full report on one distribution.

int run_inequalities(const CommonOpts& c, const TargetOpts& t, const ejmnet::io::RunMeta& meta) {
    json source;
    const ejmnet::TripartiteDistribution dist = resolve_distribution(t, &source);
    const ejmnet::CorrelatorSet corr = ejmnet::distribution_to_correlators(dist);
    const ejmnet::StzValues decomposition = ejmnet::stz(corr);
    const ejmnet::BellReport bell = ejmnet::eval_B(corr);
    const std::array<ejmnet::SliceMargin, 12> margins = ejmnet::slice_margins(corr);
    const ejmnet::BprimeReport bprime = ejmnet::eval_Bprime(dist);
    const ejmnet::BprimeLinReport lin = ejmnet::Bprime_lin(dist);

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        j["source"] = source;
        j["stz"] = ejmnet::io::to_json(decomposition);
        j["B"] = ejmnet::io::to_json(bell);
        json ms = json::array();
        for (const ejmnet::SliceMargin& m : margins) ms.push_back(ejmnet::io::to_json(m));
        j["sliceMargins"] = ms;
        j["Bprime"] = ejmnet::io::to_json(bprime);
        j["BprimeLin"] = ejmnet::io::to_json(lin);
        emit_json(c, j);
        return 0;
    }

    std::string out = ejmnet::io::csv_meta_block(meta);
    out += "# source: " + source.dump() + "\n";
    out += "# S: " + fmt(decomposition.S) + " T: " + fmt(decomposition.T) + " Z: " +
           fmt(decomposition.Z) + "\n";
    out += "# quantum bound applies (uniform Bob marginal): ";
    out += bprime.quantumBoundApplies ? "yes\n" : "no\n";
    out += "expression,value,bound,margin,violated\n";
    auto row = [&](const std::string& name, double value, double bound, bool violated) {
        out += ejmnet::io::csv_join(
            {name, fmt(value), fmt(bound), fmt(bound - value), violated ? "1" : "0"});
    };
    row("B = S/3 - T", bell.value, bell.bound, bell.violated);
    for (const ejmnet::SliceMargin& m : margins) row(m.name, m.value, m.bound, m.violated);
    row("Bprime vs bilocal bound", bprime.value, bprime.bilocalBound, bprime.violatesBilocal);
    if (bprime.quantumBoundApplies)
        row("Bprime vs quantum bound", bprime.value, bprime.quantumBound, bprime.violatesQuantum);
    row("Bprime vs concavity bound", bprime.value, lin.concavityBound, false);
    out += ejmnet::io::csv_join({"Bprime_lin", fmt(lin.linValue), "", "", ""});
    emit(c, out);
    return 0;
}

// ---------------------------------------------------------------------------
// zscan: heuristic maximum of B over bilocal models per off-pattern cap Z.

int run_zscan(const CommonOpts& c, const std::vector<double>& zgrid,
              const ejmnet::io::RunMeta& meta) {
    if (zgrid.empty()) throw ejmnet::UsageError("zscan needs a non-empty --z grid");
    for (double z : zgrid)
        if (z < 0.0) throw ejmnet::UsageError("zscan: Z values must be non-negative");
    const ejmnet::FitOptions opts = fit_options(c);

    json rows = json::array();
    std::string csv = "Z,maxB,bound\n";
    for (double z : zgrid) {
        const ejmnet::MaxExpressionResult r = ejmnet::max_B_given_Z(z, opts);
        const double bound = 3.0 + 5.0 * z;
        csv += ejmnet::io::csv_join({fmt(z), fmt(r.value), fmt(bound)});
        json row;
        row["Z"] = z;
        row["maxB"] = r.value;
        row["bound"] = bound;
        rows.push_back(row);
    }

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        j["rows"] = rows;
        emit_json(c, j);
    } else {
        emit(c, ejmnet::io::csv_meta_block(meta) + csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// circuit: verify the measurement circuit on a theta grid.

int run_circuit(const CommonOpts& c, std::vector<double> thetas,
                const ejmnet::io::RunMeta& meta) {
    if (thetas.empty()) {
        for (int i = 0; i <= 20; ++i)
            thetas.push_back(std::numbers::pi / 2.0 * static_cast<double>(i) / 20.0);
    }
    const std::vector<ejmnet::CircuitVerdict> verdicts = ejmnet::verify_circuit(thetas);
    bool all_pass = true;
    for (const ejmnet::CircuitVerdict& v : verdicts) all_pass = all_pass && v.pass;

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        json vs = json::array();
        for (const ejmnet::CircuitVerdict& v : verdicts) vs.push_back(ejmnet::io::to_json(v));
        j["verdicts"] = vs;
        j["allPass"] = all_pass;
        emit_json(c, j);
    } else {
        std::string out = ejmnet::io::csv_meta_block(meta);
        out += "theta,perm1,perm2,perm3,perm4,maxInfidelity,wiresSwapped,pass\n";
        for (const ejmnet::CircuitVerdict& v : verdicts)
            out += ejmnet::io::csv_join(
                {fmt(v.theta), std::to_string(v.permutation[0]), std::to_string(v.permutation[1]),
                 std::to_string(v.permutation[2]), std::to_string(v.permutation[3]),
                 fmt(v.maxInfidelity), v.wiresSwapped ? "1" : "0", v.pass ? "1" : "0"});
        emit(c, out);
    }
    return all_pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// fit: one bilocal-model fit against a target distribution.

int run_fit(const CommonOpts& c, const TargetOpts& t, const ejmnet::io::RunMeta& meta) {
    json source;
    const ejmnet::TripartiteDistribution dist = resolve_distribution(t, &source);
    const ejmnet::FitOptions opts = fit_options(c);
    const ejmnet::FitResult result = ejmnet::fit_bilocal(dist, opts);

    if (c.format == "json") {
        json j;
        j["meta"] = ejmnet::io::json_meta(meta);
        j["source"] = source;
        j["result"] = ejmnet::io::to_json(result);
        emit_json(c, j);
        return 0;
    }

    std::string out = ejmnet::io::csv_meta_block(meta);
    out += "# source: " + source.dump() + "\n";
    out += "feasible,residual,itersUsed,restartsUsed\n";
    out += ejmnet::io::csv_join({result.feasible ? "1" : "0", fmt(result.residual),
                                 std::to_string(result.itersUsed),
                                 std::to_string(result.restartsUsed)});
    emit(c, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilocal network toolkit: correlators, inequalities, boundary scans, circuit "
                 "verification"};
    app.require_subcommand(1);

    CommonOpts corr_c, scan_c, ineq_c, zscan_c, circ_c, fit_c;
    TargetOpts corr_t, ineq_t, fit_t;
    std::vector<double> scan_thetas, scan_v1, zscan_z, circ_thetas;
    std::string scan_settings = "pauli";
    bool scan_diagonal = false;

    CLI::App* corr = app.add_subcommand(
        "correlators", "Closed-form vs Born-rule correlators and their discrepancy");
    add_common_flags(corr, corr_c);
    add_target_flags(corr, corr_t, false);

    CLI::App* scan =
        app.add_subcommand("scan", "Bilocal-set boundary: V2crit per V1 (or symmetric diagonal)");
    add_common_flags(scan, scan_c);
    add_fit_flags(scan, scan_c);
    scan->add_option("--theta", scan_thetas, "Basis parameters to scan");
    scan->add_option("--settings", scan_settings, "Measurement settings preset")
        ->check(CLI::IsMember({"pauli", "rotated"}));
    scan->add_option("--v1", scan_v1, "Grid of first-source visibilities");
    scan->add_flag("--diagonal", scan_diagonal, "Scan the symmetric V1 = V2 diagonal instead");

    CLI::App* ineq = app.add_subcommand(
        "inequalities", "Full inequality report for a network point or distribution file");
    add_common_flags(ineq, ineq_c);
    add_target_flags(ineq, ineq_t, true);

    CLI::App* zscan =
        app.add_subcommand("zscan", "Heuristic max of B over bilocal models per Z cap");
    add_common_flags(zscan, zscan_c);
    add_fit_flags(zscan, zscan_c);
    zscan->add_option("--z", zscan_z, "Grid of off-pattern caps Z");

    CLI::App* circ = app.add_subcommand("circuit", "Verify the measurement circuit per theta");
    add_common_flags(circ, circ_c);
    circ->add_option("--theta", circ_thetas, "Thetas to verify (default: 21-point grid)");

    CLI::App* fit = app.add_subcommand("fit", "Fit one bilocal model to a target distribution");
    add_common_flags(fit, fit_c);
    add_fit_flags(fit, fit_c);
    add_target_flags(fit, fit_t, true);
    fit_c.format = "json";

    try {
        const json config = load_config_json(argc, argv);
        if (!config.empty()) {
            for (CommonOpts* c : {&corr_c, &scan_c, &ineq_c, &zscan_c, &circ_c, &fit_c})
                apply_common_config(config, *c);
            for (TargetOpts* t : {&corr_t, &ineq_t, &fit_t}) apply_target_config(config, *t);
            cfg_list(config, "theta", scan_thetas);
            cfg(config, "settings", scan_settings);
            cfg_list(config, "v1", scan_v1);
            cfg(config, "diagonal", scan_diagonal);
            cfg_list(config, "z", zscan_z);
            cfg_list(config, "theta", circ_thetas);
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return app.exit(e);
            std::cerr << "usage error: " << e.what() << "\n";
            return 1;
        }

        ejmnet::io::RunMeta meta;
        meta.commandLine = join_command_line(argc, argv);
        meta.wallClock = ejmnet::io::wall_clock_now();

        if (corr->parsed()) {
            meta.seed = corr_c.seed;
            return run_correlators(corr_c, corr_t, meta);
        }
        if (scan->parsed()) {
            meta.seed = scan_c.seed;
            return run_scan(scan_c, scan_thetas, scan_settings, scan_v1, scan_diagonal, meta);
        }
        if (ineq->parsed()) {
            meta.seed = ineq_c.seed;
            return run_inequalities(ineq_c, ineq_t, meta);
        }
        if (zscan->parsed()) {
            meta.seed = zscan_c.seed;
            return run_zscan(zscan_c, zscan_z, meta);
        }
        if (circ->parsed()) {
            meta.seed = circ_c.seed;
            return run_circuit(circ_c, circ_thetas, meta);
        }
        if (fit->parsed()) {
            meta.seed = fit_c.seed;
            return run_fit(fit_c, fit_t, meta);
        }
        std::cerr << "usage error: no subcommand given\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ejmnet::exit_code_for(e);
    }
}
