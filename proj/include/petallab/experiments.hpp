#pragma once

#include <optional>
#include <string>
#include <vector>

#include "petallab/compacts.hpp"
#include "petallab/domains.hpp"
#include "petallab/fekete.hpp"
#include "petallab/wos.hpp"

namespace petallab {

/// Sweep drive: every quantity is evaluated against the base domain with the
/// probe points and the compact set carried to parameter t; references come
/// from the selected petal.
struct SweepConfig {
    SweepConfig(KoenigsDomain domain_, CompactSet compact_)
        : domain(std::move(domain_)), compact(std::move(compact_)) {}

    KoenigsDomain domain;
    CompactSet compact;
    int petal_index = 0;
    Complex z{0.0, 0.0};
    Complex w{0.0, 0.0};
    std::vector<Complex> probe_grid;  // density probes; defaults to {z}
    std::vector<double> t_grid{0.0};
    std::vector<std::string> quantities;  // harmonic, density, distance, green,
                                          // area, n_diameter, capacity, bounds
    int diameter_n = 4;
    int m = 64;
    WosConfig wos;
    FeketeConfig fekete;

    void validate() const;
};

struct SweepRow {
    double t;
    std::string quantity;
    double value;
    double std_err;
    std::string flags;
};

struct ReferenceValue {
    std::string quantity;
    double value;
    double std_err;
    std::string source;
};

enum class Outcome { Pass, Fail, Inconclusive };

struct Verdict {
    std::string check;
    Outcome outcome;
    double margin;
    std::string detail;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<ReferenceValue> references;
    std::vector<Verdict> verdicts;
    uint64_t seed = 0;
    std::string version;
    std::string domain_desc;
    std::string petal_desc;
};

/// Computes every requested quantity at every t of the grid, plus the petal
/// reference values.
SweepReport t_sweep(const SweepConfig& cfg);

/// Named theorem / property checkers. Returns the verdict-bearing report.
/// Known names: T1..T7, SM-H, SM-G, MINDA.
SweepReport check(const std::string& name, const SweepConfig& cfg);

Outcome worst_outcome(const SweepReport& report);

const char* outcome_name(Outcome o);

}  // namespace petallab
