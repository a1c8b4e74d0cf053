#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tauber/conditions.hpp"
#include "tauber/harness.hpp"
#include "tauber/lemmas.hpp"
#include "tauber/logmean.hpp"
#include "tauber/statlimit.hpp"

namespace tauber {

using Json = nlohmann::ordered_json;

// Real values print as numbers, complex ones as {re, im}.
Json value_json(const Value& v, bool is_complex);

Json to_json(const RunConfig& c);
// Overwrites the fields present in `j`; unknown keys are an error. On
// error `c` is left as it was.
void merge_config(RunConfig& c, const Json& j);
RunConfig config_from_file(const std::filesystem::path& path);

Json to_json(const DensityProfile& p);
Json to_json(const LimitVerdict& v, bool is_complex = false);
Json to_json(const SlowWindow& w);
Json to_json(const WindowCheck& w);
Json to_json(const WindowSearch& w);
Json to_json(const ModulusCurve& m);
Json to_json(const ConditionReport& r);
Json to_json(const GeometricChain& c);
Json to_json(const LemmaReport& r);
Json to_json(const BnSequence& b);
Json to_json(const JDecomposition& j, bool is_complex = false);
Json to_json(const LiminfReport& r);
Json to_json(const TheoremCase& c);
Json to_json(const SpecEvidence& e);
Json to_json(const SuiteReport& r);

// Tool name, version and the run configuration with its horizons. No clock
// or host data, so reports stay byte-identical across runs.
Json provenance(const RunConfig& c);

// {provenance, command, result}.
Json envelope(const RunConfig& c, const std::string& command, Json result);

std::string suite_table(const SuiteReport& r);

// One directory per case under `dir` (theorem_spec), holding the mean curve,
// density profiles, window attempts and the case itself.
void write_evidence_bundle(const SuiteReport& r, const std::filesystem::path& dir);

// Whitespace separated "x y" rows with a leading comment line.
std::string two_column(const std::string& header, const std::vector<double>& x, const std::vector<double>& y);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tauber
