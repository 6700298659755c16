#pragma once

// Coupling sweeps of the three-level LMG model: for every lambda and every
// requested source (exact ground state, projected coherent state) compute
// energies, linear entanglement entropies and squeezing parameters, then
// write them as CSV or JSON with a fixed column order.
//
// CSV columns, in order:
//   lambda, source, energy, L_level1, L_level2, L_level3, L1_atom, L2_atom,
//   xi2_total, xi2_21, xi2_31, xi2_32, alpha0, beta0
// Levels and pairs use 1-based labels. Observables not requested are left
// empty (CSV) or null (JSON).

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqudit::sweep {

enum class Source { Numerical, Variational };
enum class Observable {
    LevelEntropy1,
    LevelEntropy2,
    LevelEntropy3,
    OneAtom,
    TwoAtom,
    SqueezingTotal,
    SqueezingPairs,
    Energy,
};
enum class Format { Csv, Json };

const char* source_name(Source s);
const char* observable_name(Observable o);
Source parse_source(const std::string& name);
Observable parse_observable(const std::string& name);
Format parse_format(const std::string& name);

std::vector<Observable> all_observables();

/// Invalid sweep configuration (bad grid, unknown names, N < 3, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    int n_particles = 50;
    double epsilon = 1.0;
    std::vector<double> lambdas;
    std::vector<Observable> observables = all_observables();
    std::vector<Source> sources{Source::Numerical, Source::Variational};
    Format format = Format::Csv;
    /// Worker threads over lambda points.
    int jobs = 1;

    bool wants(Observable o) const;
    /// Throws ConfigError.
    void validate() const;
};

/// count points from lo to hi inclusive (lo + (hi - lo) k / (count - 1)),
/// merged with the critical couplings epsilon/2 and 3 epsilon/2 when they
/// fall inside [lo, hi]. Sorted, duplicates removed.
std::vector<double> lambda_grid(double lo, double hi, int count, double epsilon);
/// 121 points on [0, 6] plus the critical couplings.
std::vector<double> default_grid(double epsilon = 1.0);

struct SweepRecord {
    double lambda = 0.0;
    Source source = Source::Numerical;
    std::optional<double> energy;
    std::array<std::optional<double>, 3> L_level;
    std::optional<double> L1_atom;
    std::optional<double> L2_atom;
    std::optional<double> xi2_total;
    std::array<std::optional<double>, 3> xi2_pairs;  // (2,1), (3,1), (3,2)
    double alpha0 = 0.0;
    double beta0 = 0.0;
};

/// One record per (lambda, source), lambda ascending, numerical first.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// %.12g; negative zero is written as 0.
std::string format_number(double v);

const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_json(std::ostream& out, const std::vector<SweepRecord>& records);
void write_records(std::ostream& out, const std::vector<SweepRecord>& records, Format format);

/// Range checks on in-memory records: entropies in [0, 1], xi^2 >= 0, all
/// present values finite. Throws IntegrityError.
void check_records(const std::vector<SweepRecord>& records);
/// Re-reads an emitted table and applies the same checks to the parsed
/// values, plus the header/ordering schema. Throws IntegrityError.
void check_output(const std::string& text, Format format);

}  // namespace symqudit::sweep
