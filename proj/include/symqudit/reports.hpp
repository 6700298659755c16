#pragma once

// Single-point reports behind the `phase`, `state` and `surface` commands.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symqudit/lmg.hpp"
#include "symqudit/rdm.hpp"
#include "symqudit/squeezing.hpp"
#include "symqudit/states.hpp"

namespace symqudit::reports {

struct PhaseReport {
    lmg::LmgParams params;
    lmg::StationaryPoint point;
    double energy = 0.0;      // thermodynamic ground energy density
    double lambda_c1 = 0.0;   // epsilon / 2
    double lambda_c2 = 0.0;   // 3 epsilon / 2
};

PhaseReport phase_report(const lmg::LmgParams& params);
void print_phase(std::ostream& out, const PhaseReport& r);

enum class StateKind { Dscs, Dcat, Nodon };
StateKind parse_state_kind(const std::string& name);
const char* state_kind_name(StateKind k);

struct StateSpec {
    StateKind kind = StateKind::Dscs;
    int n_particles = 10;
    int n_levels = 3;
    PhasePoint z;         // dscs, dcat (dcat uses the chart z_1 = 1)
    PhaseVector phases;   // nodon
};

struct ClosedFormCheck {
    std::string name;
    double deviation = 0.0;
};

struct StateReport {
    StateSpec spec;
    std::vector<EntropyReport> level;        // one per level
    EntropyReport one_atom;
    std::optional<EntropyReport> two_atom;   // N >= 3
    SqueezingReport squeezing;
    std::vector<ClosedFormCheck> checks;     // closed form vs state vector

    double max_deviation() const;
};

/// Throws std::invalid_argument for inconsistent parameters.
StateReport state_report(const StateSpec& spec);
void print_state(std::ostream& out, const StateReport& r);

enum class SurfaceCoords { AlphaBeta, XY };
enum class SurfaceObservable { Level1, Level2, Level3, OneAtom, TwoAtom, Squeezing, Energy };
SurfaceObservable parse_surface_observable(const std::string& name);
const char* surface_observable_name(SurfaceObservable o);

struct SurfaceConfig {
    SurfaceCoords coords = SurfaceCoords::AlphaBeta;
    StateKind state = StateKind::Dcat;  // dscs or dcat
    SurfaceObservable observable = SurfaceObservable::Level1;
    int n_particles = 50;
    double epsilon = 1.0;
    double lambda = 1.0;                // energy observable only
    double range_min = 0.0;             // both grid axes
    double range_max = 2.0;
    int points = 41;                    // per axis
    std::vector<double> curve_lambdas;  // stationary curve abscissae

    void validate() const;
};

struct SurfaceTable {
    std::string x_name, y_name, value_name;
    struct Row {
        double x, y, value;
    };
    std::vector<Row> rows;
};

struct CurveRow {
    double lambda, alpha0, beta0;
    lmg::Phase phase;
};

/// Real grid over (alpha, beta) for z = (1, alpha, beta), or over (x, y) for
/// the closed-form coherent-state level entropy with x = |z_i|^2 and
/// y = |z|^2 - |z_i|^2. Entropies are normalized linear entropies.
SurfaceTable surface_table(const SurfaceConfig& config);
std::vector<CurveRow> stationary_curve(double epsilon, const std::vector<double>& lambdas);

void write_surface_csv(std::ostream& out, const SurfaceTable& t);
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace symqudit::reports
