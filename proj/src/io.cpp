#include "seqbell/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "seqbell/errors.hpp"

namespace seqbell {

namespace {

bool equals_builtin(const BellFunctional& f) {
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), f.name) == names.end()) return false;
    const BellFunctional& b = builtin(f.name);
    return f.n_alice == b.n_alice && f.n_bob == b.n_bob && f.corr_coeffs == b.corr_coeffs &&
           f.alice_marg == b.alice_marg && f.bob_marg == b.bob_marg && f.constant == b.constant &&
           f.classical_bound == b.classical_bound && f.use_abs == b.use_abs;
}

} // namespace

void to_json(nlohmann::json& j, const StateSpec& s) { j = to_string(s); }

void from_json(const nlohmann::json& j, StateSpec& s) { s = parse_state_spec(j.get<std::string>()); }

void to_json(nlohmann::json& j, const Direction& d) { j = nlohmann::json::array({d.theta, d.phi}); }

void from_json(const nlohmann::json& j, Direction& d) {
    if (j.is_array()) {
        if (j.size() != 2)
            throw InvalidParameter("direction must be a [polar, azimuth] pair in radians");
        d.theta = j.at(0).get<double>();
        d.phi = j.at(1).get<double>();
        return;
    }
    d.theta = j.at("theta").get<double>();
    d.phi = j.at("phi").get<double>();
}

BellFunctional functional_from_json(const nlohmann::json& j) {
    if (j.is_string()) return builtin(j.get<std::string>());

    BellFunctional f;
    f.name = j.value("name", std::string("custom"));
    const auto& corr = j.at("corr");
    f.n_alice = static_cast<int>(corr.size());
    if (f.n_alice < 1 || f.n_alice > 4)
        throw InvalidParameter("functional: need 1..4 Alice settings");
    f.n_bob = static_cast<int>(corr.at(0).size());
    if (f.n_bob < 1 || f.n_bob > 4) throw InvalidParameter("functional: need 1..4 Bob settings");
    f.corr_coeffs.assign(f.n_alice, std::vector<Rational>(f.n_bob));
    for (int u = 0; u < f.n_alice; ++u) {
        if (static_cast<int>(corr.at(u).size()) != f.n_bob)
            throw InvalidParameter("functional: ragged coefficient matrix");
        for (int v = 0; v < f.n_bob; ++v)
            f.corr_coeffs[u][v] = rational_from_double(corr.at(u).at(v).get<double>());
    }
    f.alice_marg.assign(f.n_alice, Rational(0));
    f.bob_marg.assign(f.n_bob, Rational(0));
    if (j.contains("alice_marg"))
        for (int u = 0; u < f.n_alice; ++u)
            f.alice_marg[u] = rational_from_double(j.at("alice_marg").at(u).get<double>());
    if (j.contains("bob_marg"))
        for (int v = 0; v < f.n_bob; ++v)
            f.bob_marg[v] = rational_from_double(j.at("bob_marg").at(v).get<double>());
    f.constant = rational_from_double(j.value("constant", 0.0));
    f.classical_bound = j.at("bound").get<double>();
    f.use_abs = j.value("use_abs", true);
    return f;
}

BellFunctional load_functional_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open functional file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
        return functional_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("functional file '" + path + "': " + e.what());
    }
}

void to_json(nlohmann::json& j, const BellFunctional& f) {
    if (equals_builtin(f)) {
        j = f.name;
        return;
    }
    nlohmann::json corr = nlohmann::json::array();
    for (int u = 0; u < f.n_alice; ++u) {
        nlohmann::json row = nlohmann::json::array();
        for (int v = 0; v < f.n_bob; ++v) row.push_back(f.corr_coeffs[u][v].to_double());
        corr.push_back(std::move(row));
    }
    nlohmann::json am = nlohmann::json::array(), bm = nlohmann::json::array();
    for (int u = 0; u < f.n_alice; ++u) am.push_back(f.alice_marg[u].to_double());
    for (int v = 0; v < f.n_bob; ++v) bm.push_back(f.bob_marg[v].to_double());
    j = nlohmann::json{{"name", f.name},
                       {"corr", std::move(corr)},
                       {"alice_marg", std::move(am)},
                       {"bob_marg", std::move(bm)},
                       {"constant", f.constant.to_double()},
                       {"bound", f.classical_bound},
                       {"use_abs", f.use_abs}};
}

void from_json(const nlohmann::json& j, BellFunctional& f) { f = functional_from_json(j); }

void to_json(nlohmann::json& j, const Scenario& s) {
    j = nlohmann::json{{"state", s.state},
                       {"inequality", s.functional},
                       {"alice", s.alice_dirs},
                       {"bobs", s.bob_dirs},
                       {"lambdas", s.lambdas}};
}

void from_json(const nlohmann::json& j, Scenario& s) {
    s.state = j.at("state").get<StateSpec>();
    s.functional = j.at("inequality").get<BellFunctional>();
    s.alice_dirs = j.at("alice").get<std::vector<Direction>>();
    s.bob_dirs = j.at("bobs").get<std::vector<std::vector<Direction>>>();
    s.lambdas = j.at("lambdas").get<std::vector<double>>();
}

void to_json(nlohmann::json& j, const ValueVector& v) {
    j = nlohmann::json{{"values", v.values}, {"violations", v.violations}};
}

void from_json(const nlohmann::json& j, ValueVector& v) {
    v.values = j.at("values").get<std::vector<double>>();
    v.violations = j.at("violations").get<std::vector<bool>>();
}

void to_json(nlohmann::json& j, const SharingResult& r) {
    j = nlohmann::json{{"k", r.k},
                       {"margin", r.margin},
                       {"feasible", r.feasible},
                       {"restarts", r.restarts_used},
                       {"all_converged", r.all_converged},
                       {"scenario", r.best_scenario}};
}

void from_json(const nlohmann::json& j, SharingResult& r) {
    r.k = j.at("k").get<int>();
    r.margin = j.at("margin").get<double>();
    r.feasible = j.at("feasible").get<bool>();
    r.restarts_used = j.at("restarts").get<int>();
    r.all_converged = j.at("all_converged").get<bool>();
    r.best_scenario = j.at("scenario").get<Scenario>();
}

void to_json(nlohmann::json& j, const ConstrainedResult& r) {
    j = nlohmann::json{{"value1", r.value1},
                       {"value2", r.value2},
                       {"residual", r.residual},
                       {"scenario", r.best_scenario}};
}

void from_json(const nlohmann::json& j, ConstrainedResult& r) {
    r.value1 = j.at("value1").get<double>();
    r.value2 = j.at("value2").get<double>();
    r.residual = j.at("residual").get<double>();
    r.best_scenario = j.at("scenario").get<Scenario>();
}

void to_json(nlohmann::json& j, const MaxBobsResult& r) {
    j = nlohmann::json{{"max_bobs", r.max_bobs}, {"per_k", r.per_k}};
}

void from_json(const nlohmann::json& j, MaxBobsResult& r) {
    r.max_bobs = j.at("max_bobs").get<int>();
    r.per_k = j.at("per_k").get<std::vector<SharingResult>>();
}

void to_json(nlohmann::json& j, const ThresholdResult& r) {
    j = nlohmann::json{{"inequality", r.functional},
                       {"kind", kind_name(r.kind)},
                       {"threshold", r.threshold},
                       {"bracket_lo", r.lo},
                       {"bracket_hi", r.hi},
                       {"restarts", r.restarts_used}};
}

void from_json(const nlohmann::json& j, ThresholdResult& r) {
    r.functional = j.at("inequality").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "concurrence")
        r.kind = ThresholdKind::Concurrence;
    else if (kind == "werner_w" || kind == "werner")
        r.kind = ThresholdKind::WernerW;
    else
        throw InvalidParameter("unknown threshold kind '" + kind + "'");
    r.threshold = j.at("threshold").get<double>();
    r.lo = j.at("bracket_lo").get<double>();
    r.hi = j.at("bracket_hi").get<double>();
    r.restarts_used = j.at("restarts").get<int>();
}

void to_json(nlohmann::json& j, const RunRecord& r) {
    j = nlohmann::json{{"command", r.command}, {"config", r.config},
                       {"seed", r.seed},       {"version", r.version},
                       {"wall_time_s", r.wall_time_s}, {"result", r.result}};
}

void from_json(const nlohmann::json& j, RunRecord& r) {
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.version = j.at("version").get<std::string>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.result = j.at("result");
}

std::string fmt_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

const char* csv_header() {
    return "command,inequality,state,k,seed,restarts,margin,feasible,threshold,kind,"
           "bracket_lo,bracket_hi,values,lambdas";
}

const char* bounds_csv_header() { return "inequality,declared_bound,enumerated_bound"; }

namespace {

std::string join_semicolon(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += fmt_double(xs[i]);
    }
    return out;
}

} // namespace

std::string to_csv_line(const CsvRow& row) {
    std::ostringstream out;
    out << row.command << ',' << row.inequality << ',' << row.state << ',';
    if (row.k) out << *row.k;
    out << ',';
    if (row.seed) out << *row.seed;
    out << ',';
    if (row.restarts) out << *row.restarts;
    out << ',';
    if (row.margin) out << fmt_double(*row.margin);
    out << ',';
    if (row.feasible) out << (*row.feasible ? "true" : "false");
    out << ',';
    if (row.threshold) out << fmt_double(*row.threshold);
    out << ',' << row.kind << ',';
    if (row.bracket_lo) out << fmt_double(*row.bracket_lo);
    out << ',';
    if (row.bracket_hi) out << fmt_double(*row.bracket_hi);
    out << ',' << join_semicolon(row.values) << ',' << join_semicolon(row.lambdas);
    return out.str();
}

OutFormat format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".json") return OutFormat::Json;
    if (ext == ".csv") return OutFormat::Csv;
    throw InvalidParameter("output path '" + path + "' must end in .json or .csv");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot open output file '" + path + "'");
    out << content;
    if (!out.good()) throw InvalidParameter("failed writing output file '" + path + "'");
}

} // namespace seqbell
