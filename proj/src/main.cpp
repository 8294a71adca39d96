#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqbell/bell.hpp"
#include "seqbell/errors.hpp"
#include "seqbell/io.hpp"
#include "seqbell/optimize.hpp"
#include "seqbell/robustness.hpp"
#include "seqbell/seqchain.hpp"
#include "seqbell/states.hpp"

namespace {

using namespace seqbell;
using nlohmann::json;

std::string display(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void print_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    const auto print_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c)
            std::printf("%-*s%s", static_cast<int>(width[c]), row[c].c_str(),
                        c + 1 == row.size() ? "\n" : "  ");
    };
    print_row(header);
    std::vector<std::string> rule;
    for (const auto w : width) rule.emplace_back(w, '-');
    print_row(rule);
    for (const auto& row : rows) print_row(row);
}

void print_scenario(const Scenario& s) {
    const auto angles = [](const std::vector<Direction>& dirs) {
        std::string out;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (i) out += "  ";
            out += "(" + display(dirs[i].theta) + ", " + display(dirs[i].phi) + ")";
        }
        return out;
    };
    std::printf("  state: %s\n", to_string(s.state).c_str());
    std::printf("  alice (theta, phi): %s\n", angles(s.alice_dirs).c_str());
    for (std::size_t i = 0; i < s.bob_dirs.size(); ++i)
        std::printf("  bob %zu (theta, phi): %s\n", i + 1, angles(s.bob_dirs[i]).c_str());
    std::string lams;
    for (std::size_t i = 0; i < s.lambdas.size(); ++i)
        lams += (i ? ", " : "") + display(s.lambdas[i]);
    std::printf("  lambdas: %s\n", lams.c_str());
}

// Options shared by the optimizing subcommands; --config (INI, with one
// [section] per subcommand) can supply any of them, command line wins.
struct CommonOpts {
    std::uint64_t seed = 0;
    int restarts = 400;
    double tol = 1e-7;
    int threads = 0;
    std::string out;
};

struct SeedState {
    CLI::Option* opt = nullptr;
    std::uint64_t* value = nullptr;
};

SeedState add_common(CLI::App* cmd, CommonOpts& o) {
    SeedState s;
    s.value = &o.seed;
    s.opt = cmd->add_option("--seed", o.seed, "RNG seed (omitted: drawn from entropy and printed)");
    cmd->add_option("--restarts", o.restarts, "Multistart restarts per optimization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "Simplex convergence tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threads", o.threads,
                    "Worker threads for restarts (0: SEQBELL_THREADS or all cores)")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write the result to this .json or .csv file");
    return s;
}

std::uint64_t resolve_seed(const SeedState& s) {
    if (s.opt->count() == 0) {
        std::random_device rd;
        *s.value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::printf("seed: %llu (drawn from entropy; pass --seed to reproduce)\n",
                    static_cast<unsigned long long>(*s.value));
    }
    return *s.value;
}

OptimizerConfig make_config(const CommonOpts& o) {
    OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.simplex_tol = o.tol;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

json config_echo(const std::string& inequality, const std::string& state, const CommonOpts& o) {
    json j{{"restarts", o.restarts}, {"tol", o.tol}, {"threads", o.threads}};
    if (!inequality.empty()) j["inequality"] = inequality;
    if (!state.empty()) j["state"] = state;
    return j;
}

void emit(const std::string& command, const json& config, std::uint64_t seed, double wall_s,
          const json& result, const std::string& out_path, const std::vector<CsvRow>& csv_rows) {
    if (out_path.empty()) return;
    if (format_from_path(out_path) == OutFormat::Json) {
        RunRecord rec;
        rec.command = command;
        rec.config = config;
        rec.seed = seed;
        rec.wall_time_s = wall_s;
        rec.result = result;
        write_text_file(out_path, json(rec).dump(2) + "\n");
    } else {
        std::string text = std::string(csv_header()) + "\n";
        for (const auto& row : csv_rows) text += to_csv_line(row) + "\n";
        write_text_file(out_path, text);
    }
    std::printf("wrote %s\n", out_path.c_str());
}

CsvRow row_for_sharing(const std::string& command, const std::string& state_str,
                       const SharingResult& r, std::uint64_t seed) {
    CsvRow row;
    row.command = command;
    row.inequality = r.best_scenario.functional.name;
    row.state = state_str;
    row.k = r.k;
    row.seed = seed;
    row.restarts = r.restarts_used;
    row.margin = r.margin;
    row.feasible = r.feasible;
    row.values = value_vector(r.best_scenario).values;
    row.lambdas = r.best_scenario.lambdas;
    return row;
}

const BellFunctional& functional_by_name(const std::string& name) {
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UnknownInequality("unknown inequality '" + name + "'; expected one of: chsh, chain3, chain4, gisin3, gisin4, i3322, dzc, bg, aiig1, aiig2");
    return builtin(name);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int cmd_bounds(const std::string& functional_file, const std::string& out_path) {
    std::vector<BellFunctional> fs;
    for (const auto& name : builtin_names()) fs.push_back(builtin(name));
    if (!functional_file.empty()) fs.push_back(load_functional_file(functional_file));

    bool all_ok = true;
    std::vector<std::vector<std::string>> rows;
    std::string csv = std::string(bounds_csv_header()) + "\n";
    for (const auto& f : fs) {
        const double enumerated = lhv_bound(f);
        const bool ok = enumerated == f.classical_bound;
        all_ok = all_ok && ok;
        rows.push_back({f.name, display(f.classical_bound), display(enumerated),
                        ok ? "OK" : "MISMATCH"});
        csv += f.name + "," + fmt_double(f.classical_bound) + "," + fmt_double(enumerated) + "\n";
    }
    print_table({"inequality", "declared", "enumerated", "status"}, rows);
    if (!out_path.empty()) {
        if (format_from_path(out_path) == OutFormat::Csv) {
            write_text_file(out_path, csv);
        } else {
            json arr = json::array();
            for (std::size_t i = 0; i < fs.size(); ++i)
                arr.push_back({{"inequality", fs[i].name},
                               {"declared_bound", fs[i].classical_bound},
                               {"enumerated_bound", lhv_bound(fs[i])}});
            write_text_file(out_path, arr.dump(2) + "\n");
        }
        std::printf("wrote %s\n", out_path.c_str());
    }
    if (!all_ok) throw BoundMismatch("declared and enumerated classical bounds disagree");
    return 0;
}

int cmd_replay(const std::string& name, const std::string& out_path) {
    const ReplayPreset preset = replay_preset(name);
    const ValueVector vv = value_vector(preset.scenario);

    std::vector<std::vector<std::string>> rows;
    bool all_within = true;
    for (std::size_t i = 0; i < vv.values.size(); ++i) {
        const double delta = vv.values[i] - preset.targets[i];
        const bool within = std::abs(delta) <= preset.tolerance;
        all_within = all_within && within;
        rows.push_back({"bob " + std::to_string(i + 1), display(vv.values[i]),
                        vv.violations[i] ? "yes" : "no", display(preset.targets[i]),
                        within ? "OK" : "OFF"});
    }
    std::printf("preset %s (%s on %s, bound %s)\n", preset.name.c_str(),
                preset.scenario.functional.name.c_str(), to_string(preset.scenario.state).c_str(),
                display(preset.scenario.functional.classical_bound).c_str());
    print_table({"bob", "value", "violates", "target", "status"}, rows);

    CsvRow row;
    row.command = "replay";
    row.inequality = preset.scenario.functional.name;
    row.state = to_string(preset.scenario.state);
    row.k = static_cast<int>(vv.values.size());
    row.values = vv.values;
    row.lambdas = preset.scenario.lambdas;
    emit("replay", json{{"preset", name}}, 0, 0.0,
         json{{"preset", name}, {"value_vector", vv}, {"targets", preset.targets}, {"within_tolerance", all_within}},
         out_path, {row});
    if (!all_within)
        throw NumericalError("replay '" + name + "' drifted from its recorded targets");
    return 0;
}

int cmd_eval(const std::string& scenario_file, const std::string& out_path) {
    std::ifstream in(scenario_file);
    if (!in) throw InvalidParameter("cannot open scenario file '" + scenario_file + "'");
    Scenario s;
    try {
        json j;
        in >> j;
        s = j.get<Scenario>();
    } catch (const json::exception& e) {
        throw InvalidParameter("scenario file '" + scenario_file + "': " + e.what());
    }
    validate(s);
    const ValueVector vv = value_vector(s);

    std::printf("%s on %s, classical bound %s\n", s.functional.name.c_str(),
                to_string(s.state).c_str(), display(s.functional.classical_bound).c_str());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < vv.values.size(); ++i)
        rows.push_back({"bob " + std::to_string(i + 1), display(vv.values[i]),
                        display(s.lambdas[i]), vv.violations[i] ? "yes" : "no"});
    print_table({"bob", "value", "lambda", "violates"}, rows);

    CsvRow row;
    row.command = "eval";
    row.inequality = s.functional.name;
    row.state = to_string(s.state);
    row.k = s.bob_count();
    row.values = vv.values;
    row.lambdas = s.lambdas;
    emit("eval", json{{"scenario", s}}, 0, 0.0, json{{"value_vector", vv}}, out_path, {row});
    return 0;
}

int cmd_share(const std::string& inequality, const std::string& state_str, int bobs,
              const CommonOpts& opts) {
    const BellFunctional& f = functional_by_name(inequality);
    const StateSpec state = parse_state_spec(state_str);
    Timer timer;
    const SharingResult res = sharing_margin(state, f, bobs, make_config(opts));

    std::printf("%s, %s, %d bob%s: margin %s -> %s\n", f.name.c_str(), state_str.c_str(), bobs,
                bobs == 1 ? "" : "s", display(res.margin).c_str(),
                res.feasible ? "FEASIBLE" : "infeasible");
    print_scenario(res.best_scenario);
    const ValueVector vv = value_vector(res.best_scenario);
    for (std::size_t i = 0; i < vv.values.size(); ++i)
        std::printf("  bob %zu value: %s (%s)\n", i + 1, display(vv.values[i]).c_str(),
                    vv.violations[i] ? "violates" : "no violation");

    json cfg = config_echo(inequality, state_str, opts);
    cfg["bobs"] = bobs;
    emit("share", cfg, opts.seed, timer.seconds(), json(res), opts.out,
         {row_for_sharing("share", state_str, res, opts.seed)});
    return 0;
}

int cmd_maxbobs(const std::string& inequality, const std::string& state_str, int k_max,
                const CommonOpts& opts) {
    const BellFunctional& f = functional_by_name(inequality);
    const StateSpec state = parse_state_spec(state_str);
    Timer timer;
    const MaxBobsResult res = max_bobs_detailed(state, f, make_config(opts), k_max);

    std::vector<std::vector<std::string>> rows;
    std::vector<CsvRow> csv_rows;
    for (const auto& r : res.per_k) {
        rows.push_back({std::to_string(r.k), display(r.margin), r.feasible ? "yes" : "no"});
        csv_rows.push_back(row_for_sharing("maxbobs", state_str, r, opts.seed));
    }
    print_table({"k", "margin", "feasible"}, rows);
    std::printf("max bobs for %s on %s: %d\n", inequality.c_str(), state_str.c_str(), res.max_bobs);

    json cfg = config_echo(inequality, state_str, opts);
    cfg["kmax"] = k_max;
    emit("maxbobs", cfg, opts.seed, timer.seconds(), json(res), opts.out, csv_rows);
    return 0;
}

int cmd_robustness(const std::string& inequality, const std::string& kind_str,
                   const CommonOpts& opts) {
    const BellFunctional& f = functional_by_name(inequality);
    Timer timer;
    const bool concurrence = kind_str == "concurrence";
    const OptimizerConfig cfg = make_config(opts);
    const ThresholdResult res = concurrence ? c_min(f, cfg) : w_min(f, cfg);

    std::printf("%s %s threshold: %s (bracket [%s, %s], %d restarts per probe)\n",
                inequality.c_str(), kind_name(res.kind), display(res.threshold).c_str(),
                display(res.lo).c_str(), display(res.hi).c_str(), res.restarts_used);

    CsvRow row;
    row.command = "robustness";
    row.inequality = inequality;
    row.seed = opts.seed;
    row.restarts = res.restarts_used;
    row.threshold = res.threshold;
    row.kind = kind_name(res.kind);
    row.bracket_lo = res.lo;
    row.bracket_hi = res.hi;
    json cfgj = config_echo(inequality, "", opts);
    cfgj["kind"] = kind_str;
    emit("robustness", cfgj, opts.seed, timer.seconds(), json(res), opts.out, {row});
    return 0;
}

int cmd_tables(const CommonOpts& opts, int k_max) {
    Timer timer;
    const OptimizerConfig cfg = make_config(opts);
    json result;
    std::vector<CsvRow> csv_rows;

    std::printf("== sequential sharing on the singlet (k = 1..%d) ==\n", k_max);
    std::vector<std::vector<std::string>> share_rows;
    for (const auto& name : builtin_names()) {
        const MaxBobsResult res = max_bobs_detailed(StateSpec::singlet(), builtin(name), cfg, k_max);
        std::vector<std::string> row{name, std::to_string(res.max_bobs)};
        std::string margins;
        for (const auto& r : res.per_k) {
            margins += (margins.empty() ? "" : " ") + display(r.margin);
            csv_rows.push_back(row_for_sharing("tables", "singlet", r, opts.seed));
        }
        row.push_back(margins);
        share_rows.push_back(std::move(row));
        result["max_bobs"][name] = res;
    }
    print_table({"inequality", "max_bobs", "margins (k = 1, 2, ...)"}, share_rows);

    for (const bool concurrence : {true, false}) {
        std::printf("\n== %s thresholds for two-Bob sharing ==\n",
                    concurrence ? "concurrence" : "werner weight");
        std::vector<std::vector<std::string>> rows;
        for (const auto& name : two_bob_capable()) {
            const ThresholdResult res =
                concurrence ? c_min(builtin(name), cfg) : w_min(builtin(name), cfg);
            rows.push_back({name, display(res.threshold),
                            "[" + display(res.lo) + ", " + display(res.hi) + "]"});
            result[concurrence ? "c_min" : "w_min"][name] = res;
            CsvRow row;
            row.command = "tables";
            row.inequality = name;
            row.seed = opts.seed;
            row.restarts = res.restarts_used;
            row.threshold = res.threshold;
            row.kind = kind_name(res.kind);
            row.bracket_lo = res.lo;
            row.bracket_hi = res.hi;
            csv_rows.push_back(std::move(row));
        }
        print_table({"inequality", "threshold", "bracket"}, rows);
    }

    json cfgj = config_echo("", "", opts);
    cfgj["kmax"] = k_max;
    emit("tables", cfgj, opts.seed, timer.seconds(), result, opts.out, csv_rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential sharing of two-qubit Bell nonlocality: simulator and optimizer"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI file with one [subcommand] section per command");

    std::string functional_file, preset_name, scenario_file, bounds_out;
    std::string inequality, state_str = "singlet", kind_str = "concurrence";
    int bobs = 2, k_max = 4;

    auto* bounds = app.add_subcommand("bounds", "Certify the ten classical bounds by enumeration");
    bounds->add_option("--functional-file", functional_file,
                       "Also check a custom functional from this JSON file");
    bounds->add_option("--out", bounds_out, "Write the table to this .json or .csv file");

    auto* replay = app.add_subcommand("replay", "Re-evaluate a published measurement preset");
    replay->add_option("preset", preset_name, "One of: " + [] {
                          std::string s;
                          for (const auto& n : replay_preset_names()) s += (s.empty() ? "" : ", ") + n;
                          return s;
                      }())
        ->required();
    std::string replay_out;
    replay->add_option("--out", replay_out, "Write the result to this .json or .csv file");

    auto* eval = app.add_subcommand("eval", "Evaluate an explicit scenario from a JSON file");
    eval->add_option("--scenario", scenario_file, "Scenario JSON (state, inequality, angles, lambdas)")
        ->required();
    std::string eval_out;
    eval->add_option("--out", eval_out, "Write the result to this .json or .csv file");

    CommonOpts share_opts, maxbobs_opts, robust_opts, tables_opts;

    auto* share = app.add_subcommand("share", "Optimize the sharing margin for k sequential Bobs");
    share->add_option("--inequality", inequality, "Inequality name")->required();
    share->add_option("--state", state_str, "singlet | schmidt:<alpha> | werner:<w>")
        ->capture_default_str();
    share->add_option("--bobs", bobs, "Number of sequential Bobs")->check(CLI::Range(1, 4))
        ->capture_default_str();
    const SeedState share_seed = add_common(share, share_opts);

    auto* maxbobs = app.add_subcommand("maxbobs", "Largest k with a feasible sharing margin");
    maxbobs->add_option("--inequality", inequality, "Inequality name")->required();
    maxbobs->add_option("--state", state_str, "singlet | schmidt:<alpha> | werner:<w>")
        ->capture_default_str();
    maxbobs->add_option("--kmax", k_max, "Stop after this many Bobs")->check(CLI::Range(1, 4))
        ->capture_default_str();
    const SeedState maxbobs_seed = add_common(maxbobs, maxbobs_opts);

    auto* robust = app.add_subcommand("robustness", "Bisect the two-Bob feasibility threshold");
    robust->add_option("--inequality", inequality, "Inequality name")->required();
    robust->add_option("--kind", kind_str, "concurrence | werner")
        ->check(CLI::IsMember({"concurrence", "werner"}))
        ->capture_default_str();
    const SeedState robust_seed = add_common(robust, robust_opts);

    auto* tables = app.add_subcommand("tables", "Regenerate the sharing and threshold tables");
    tables->add_option("--kmax", k_max, "Bob limit for the sharing table")->check(CLI::Range(1, 4))
        ->capture_default_str();
    const SeedState tables_seed = add_common(tables, tables_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(functional_file, bounds_out);
        if (replay->parsed()) return cmd_replay(preset_name, replay_out);
        if (eval->parsed()) return cmd_eval(scenario_file, eval_out);
        if (share->parsed()) {
            resolve_seed(share_seed);
            return cmd_share(inequality, state_str, bobs, share_opts);
        }
        if (maxbobs->parsed()) {
            resolve_seed(maxbobs_seed);
            return cmd_maxbobs(inequality, state_str, k_max, maxbobs_opts);
        }
        if (robust->parsed()) {
            resolve_seed(robust_seed);
            return cmd_robustness(inequality, kind_str, robust_opts);
        }
        if (tables->parsed()) {
            resolve_seed(tables_seed);
            return cmd_tables(tables_opts, k_max);
        }
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
