#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwk/int_types.hpp"

namespace qwk {

inline const char* QWK_VERSION = "0.1.0";

struct CaseRecord {
    std::string name;
    std::string params;
    std::string status;  // pass | fail | inconclusive
    std::string witness;
    int stabilized = -1;  // -1 not applicable, else 0/1 (precision re-run agreement)
    long runtime_ms = 0;
};

struct SuiteConfig {
    std::vector<std::string> suites;
    std::vector<long> ms;                 // truncation levels
    std::vector<std::string> rings;       // ring specs
    int vars = 1;
    int maxdeg = 6;
    long prec_q = 8;
    long prec_p = 8;
    uint64_t seed = 1;
    int trials = 25;
    int jobs = 1;
    bool timings = false;                 // off keeps reports byte-identical
    std::string emit = "text";            // text | json | csv
    std::string out;                      // empty = stdout
};

struct Report {
    std::string version = QWK_VERSION;
    SuiteConfig config;
    std::vector<CaseRecord> cases;

    long passed() const;
    long failed() const;
    long inconclusive() const;

    std::string to_json() const;
    std::string to_csv() const;
    std::string to_text() const;
    std::string render() const;  // per config.emit
};

// Dispatches the named suites (koszul, fvrel, injectivity, lambda-iso, qv,
// qfv, ke, thm52, vseq, pcomplete, zp-decomp) over the configured parameter
// ranges on a small work pool; records are sorted before emission so equal
// configs give byte-identical reports.
Report run_suites(const SuiteConfig& cfg);

// Returns the list of suite names run_suites understands.
std::vector<std::string> known_suites();

// Golden values recomputed with their stated oracles; serialized with
// provenance notes.
std::string compute_golden_json();

struct GoldenDiff {
    bool file_existed = false;
    bool matches = false;
    std::string diff;  // human-readable summary
};
GoldenDiff golden_compare(const std::string& path);
void golden_write(const std::string& path);

}  // namespace qwk
