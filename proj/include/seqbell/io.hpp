#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqbell/bell.hpp"
#include "seqbell/measure.hpp"
#include "seqbell/optimize.hpp"
#include "seqbell/robustness.hpp"
#include "seqbell/seqchain.hpp"
#include "seqbell/states.hpp"

namespace seqbell {

inline constexpr const char* kVersion = "1.0.0";

// ADL serializers so nlohmann::json converts these types directly.  States
// travel as their spec string ("singlet", "schmidt:0.5", "werner:0.8");
// functionals travel as a bare name when built in, else as the same object
// shape load_functional_file accepts.
void to_json(nlohmann::json& j, const StateSpec& s);
void from_json(const nlohmann::json& j, StateSpec& s);
void to_json(nlohmann::json& j, const Direction& d);
void from_json(const nlohmann::json& j, Direction& d);
void to_json(nlohmann::json& j, const BellFunctional& f);
void from_json(const nlohmann::json& j, BellFunctional& f);
void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);
void to_json(nlohmann::json& j, const ValueVector& v);
void from_json(const nlohmann::json& j, ValueVector& v);
void to_json(nlohmann::json& j, const SharingResult& r);
void from_json(const nlohmann::json& j, SharingResult& r);
void to_json(nlohmann::json& j, const ConstrainedResult& r);
void from_json(const nlohmann::json& j, ConstrainedResult& r);
void to_json(nlohmann::json& j, const MaxBobsResult& r);
void from_json(const nlohmann::json& j, MaxBobsResult& r);
void to_json(nlohmann::json& j, const ThresholdResult& r);
void from_json(const nlohmann::json& j, ThresholdResult& r);

// Functional from an already-parsed JSON value (string = builtin name,
// object = inline coefficients).  Shared by the file loader and from_json.
BellFunctional functional_from_json(const nlohmann::json& j);

// One self-describing output artifact per command invocation.  The config
// echo plus seed reproduce `result` exactly; wall_time_s is the only field
// excluded from determinism comparisons.
struct RunRecord {
    std::string command;
    nlohmann::json config;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    double wall_time_s = 0.0;
    nlohmann::json result;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

// Unified CSV schema shared by every command except `bounds`; column order
// is fixed (see README) because table aggregation depends on it.  Fields
// that do not apply to a command stay empty.
struct CsvRow {
    std::string command;
    std::string inequality;
    std::string state;
    std::optional<int> k;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<double> margin;
    std::optional<bool> feasible;
    std::optional<double> threshold;
    std::string kind;
    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
    std::vector<double> values;  // ';'-joined in the cell
    std::vector<double> lambdas; // ';'-joined in the cell
};

const char* csv_header();        // command,inequality,state,k,seed,...
const char* bounds_csv_header(); // inequality,declared_bound,enumerated_bound
std::string to_csv_line(const CsvRow& row);

// Shortest decimal form that parses back to the identical double.
std::string fmt_double(double x);

enum class OutFormat { Json, Csv };

// Picks the format from the file extension (.json or .csv only).
OutFormat format_from_path(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace seqbell
