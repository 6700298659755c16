#include "symqudit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "symqudit/errors.hpp"
#include "symqudit/lmg.hpp"
#include "symqudit/rdm.hpp"
#include "symqudit/squeezing.hpp"

namespace symqudit::sweep {

namespace {

constexpr int kLevels = 3;
constexpr double kRangeSlack = 1e-12;

struct Named {
    Observable o;
    const char* name;
};

constexpr Named kObservableNames[] = {
    {Observable::LevelEntropy1, "level_entropy_1"}, {Observable::LevelEntropy2, "level_entropy_2"},
    {Observable::LevelEntropy3, "level_entropy_3"}, {Observable::OneAtom, "one_atom"},
    {Observable::TwoAtom, "two_atom"},              {Observable::SqueezingTotal, "squeezing_total"},
    {Observable::SqueezingPairs, "squeezing_pairs"}, {Observable::Energy, "energy"},
};

std::vector<SweepRecord> records_at(const BasisPtr& basis, const SweepConfig& cfg, double lambda) {
    const lmg::LmgParams params{cfg.epsilon, lambda, cfg.n_particles};
    const lmg::StationaryPoint sp = lmg::stationary_point(params);
    const int n = cfg.n_particles;
    const bool need_moments = cfg.wants(Observable::OneAtom) || cfg.wants(Observable::TwoAtom) ||
                              cfg.wants(Observable::SqueezingTotal) || cfg.wants(Observable::SqueezingPairs);

    std::vector<Source> order = cfg.sources;
    std::sort(order.begin(), order.end());

    std::vector<SweepRecord> out;
    for (Source src : order) {
        SweepRecord rec;
        rec.lambda = lambda;
        rec.source = src;
        rec.alpha0 = sp.alpha0;
        rec.beta0 = sp.beta0;

        std::optional<SymmetricState> state;
        double energy = 0.0;
        if (src == Source::Numerical) {
            auto gs = lmg::ground_state(basis, params);
            energy = gs.energy;
            state = std::move(gs.state);
        } else {
            state = lmg::variational_cat(basis, params);
            if (cfg.wants(Observable::Energy)) energy = lmg::energy_expval(lmg::build_hamiltonian(*basis, params), *state);
        }
        if (cfg.wants(Observable::Energy)) rec.energy = energy;

        const Observable level_obs[kLevels] = {Observable::LevelEntropy1, Observable::LevelEntropy2,
                                               Observable::LevelEntropy3};
        for (int i = 0; i < kLevels; ++i) {
            if (!cfg.wants(level_obs[i])) continue;
            rec.L_level[static_cast<std::size_t>(i)] =
                linear_entropy(level_purity(*state, i), EntropyKind::Level, n, kLevels);
        }
        if (need_moments) {
            const Moments m = compute_moments(*state);
            if (cfg.wants(Observable::OneAtom))
                rec.L1_atom = linear_entropy(one_qudit_purity(m), EntropyKind::OneAtom, n, kLevels);
            if (cfg.wants(Observable::TwoAtom))
                rec.L2_atom = linear_entropy(two_qudit_purity(m), EntropyKind::TwoAtom, n, kLevels);
            const SqueezingReport sq = squeezing(m);
            if (cfg.wants(Observable::SqueezingTotal)) rec.xi2_total = sq.total;
            if (cfg.wants(Observable::SqueezingPairs)) {
                rec.xi2_pairs[0] = sq.pairwise.at({1, 0});
                rec.xi2_pairs[1] = sq.pairwise.at({2, 0});
                rec.xi2_pairs[2] = sq.pairwise.at({2, 1});
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<std::optional<double>> numeric_fields(const SweepRecord& r) {
    return {r.energy,       r.L_level[0],  r.L_level[1],  r.L_level[2],  r.L1_atom,  r.L2_atom,
            r.xi2_total,    r.xi2_pairs[0], r.xi2_pairs[1], r.xi2_pairs[2], r.alpha0, r.beta0};
}

void append_optional(std::string& row, const std::optional<double>& v) {
    row += ',';
    if (v) row += format_number(*v);
}

void check_entropy(const std::optional<double>& v, const char* what) {
    if (!v) return;
    if (!std::isfinite(*v) || *v < -kRangeSlack || *v > 1.0 + kRangeSlack)
        throw IntegrityError(std::string(what) + " outside [0, 1]: " + format_number(*v));
}

void check_xi(const std::optional<double>& v, const char* what) {
    if (!v) return;
    if (!std::isfinite(*v) || *v < -kRangeSlack) throw IntegrityError(std::string(what) + " is negative: " + format_number(*v));
}

void check_finite(const std::optional<double>& v, const char* what) {
    if (v && !std::isfinite(*v)) throw IntegrityError(std::string(what) + " is not finite");
}

void check_one(const SweepRecord& r) {
    check_finite(r.energy, "energy");
    check_entropy(r.L_level[0], "L_level1");
    check_entropy(r.L_level[1], "L_level2");
    check_entropy(r.L_level[2], "L_level3");
    check_entropy(r.L1_atom, "L1_atom");
    check_entropy(r.L2_atom, "L2_atom");
    check_xi(r.xi2_total, "xi2_total");
    check_xi(r.xi2_pairs[0], "xi2_21");
    check_xi(r.xi2_pairs[1], "xi2_31");
    check_xi(r.xi2_pairs[2], "xi2_32");
    check_finite(r.alpha0, "alpha0");
    check_finite(r.beta0, "beta0");
}

void check_order(const std::vector<std::pair<double, Source>>& keys) {
    for (std::size_t k = 1; k < keys.size(); ++k) {
        const bool ok = keys[k - 1].first < keys[k].first ||
                        (keys[k - 1].first == keys[k].first && keys[k - 1].second < keys[k].second);
        if (!ok) throw IntegrityError("sweep rows are not ordered by (lambda, source)");
    }
}

std::optional<double> parse_cell(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) throw IntegrityError("malformed number '" + cell + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

const char* source_name(Source s) { return s == Source::Numerical ? "numerical" : "variational"; }

const char* observable_name(Observable o) {
    for (const auto& n : kObservableNames)
        if (n.o == o) return n.name;
    return "?";
}

Source parse_source(const std::string& name) {
    if (name == "numerical") return Source::Numerical;
    if (name == "variational") return Source::Variational;
    throw ConfigError("unknown source '" + name + "' (numerical, variational)");
}

Observable parse_observable(const std::string& name) {
    for (const auto& n : kObservableNames)
        if (name == n.name) return n.o;
    throw ConfigError("unknown observable '" + name + "'");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown format '" + name + "' (csv, json)");
}

std::vector<Observable> all_observables() {
    std::vector<Observable> out;
    for (const auto& n : kObservableNames) out.push_back(n.o);
    return out;
}

bool SweepConfig::wants(Observable o) const {
    return std::find(observables.begin(), observables.end(), o) != observables.end();
}

void SweepConfig::validate() const {
    if (n_particles < 3) throw ConfigError("N must be at least 3");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");
    if (lambdas.empty()) throw ConfigError("lambda grid is empty");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!std::isfinite(lambdas[k]) || lambdas[k] < 0.0) throw ConfigError("lambda values must be finite and >= 0");
        if (k > 0 && !(lambdas[k] > lambdas[k - 1])) throw ConfigError("lambda grid must be strictly increasing");
    }
    if (sources.empty()) throw ConfigError("no source selected");
    if (observables.empty()) throw ConfigError("no observable selected");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    if (dimension(n_particles, kLevels) > SymmetricBasis::max_dim) throw ConfigError("N too large for the basis index");
}

std::vector<double> lambda_grid(double lo, double hi, int count, double epsilon) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0) throw ConfigError("lambda range must be finite and >= 0");
    if (count < 1) throw ConfigError("lambda count must be at least 1");
    if (count == 1 && lo != hi) throw ConfigError("a single lambda point needs lambda-min == lambda-max");
    if (count > 1 && !(hi > lo)) throw ConfigError("lambda-max must exceed lambda-min");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count) + 2);
    for (int k = 0; k < count; ++k)
        g.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
    g.back() = hi;
    for (double c : {0.5 * epsilon, 1.5 * epsilon})
        if (c >= lo && c <= hi) g.push_back(c);
    std::sort(g.begin(), g.end());
    // Critical couplings win over grid points within roundoff of them.
    std::vector<double> out;
    for (double v : g) {
        if (!out.empty() && std::abs(v - out.back()) <= 1e-12 * std::max(1.0, std::abs(v))) {
            if (v == 0.5 * epsilon || v == 1.5 * epsilon) out.back() = v;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> default_grid(double epsilon) { return lambda_grid(0.0, 6.0, 121, epsilon); }

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    const BasisPtr basis = make_basis(config.n_particles, kLevels);
    const std::size_t points = config.lambdas.size();
    std::vector<std::vector<SweepRecord>> slots(points);
    std::vector<std::exception_ptr> errors(points);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < points; k = next.fetch_add(1)) {
            try {
                slots[k] = records_at(basis, config, config.lambdas[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(config.jobs, static_cast<int>(points));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<SweepRecord> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    return out;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drops the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{"lambda",  "source",    "energy", "L_level1", "L_level2",
                                               "L_level3", "L1_atom",  "L2_atom", "xi2_total", "xi2_21",
                                               "xi2_31",  "xi2_32",    "alpha0", "beta0"};
    return cols;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    const auto& cols = csv_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (const auto& r : records) {
        std::string row = format_number(r.lambda) + ',' + source_name(r.source);
        for (const auto& v : numeric_fields(r)) append_optional(row, v);
        out << row << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<SweepRecord>& records) {
    const auto& cols = csv_columns();
    out << "[\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        out << "  {\"" << cols[0] << "\": " << format_number(r.lambda) << ", \"" << cols[1] << "\": \""
            << source_name(r.source) << '"';
        const auto fields = numeric_fields(r);
        for (std::size_t f = 0; f < fields.size(); ++f)
            out << ", \"" << cols[f + 2] << "\": " << (fields[f] ? format_number(*fields[f]) : "null");
        out << '}' << (k + 1 < records.size() ? "," : "") << '\n';
    }
    out << "]\n";
}

void write_records(std::ostream& out, const std::vector<SweepRecord>& records, Format format) {
    if (format == Format::Csv)
        write_csv(out, records);
    else
        write_json(out, records);
}

void check_records(const std::vector<SweepRecord>& records) {
    std::vector<std::pair<double, Source>> keys;
    for (const auto& r : records) {
        check_one(r);
        keys.emplace_back(r.lambda, r.source);
    }
    check_order(keys);
}

void check_output(const std::string& text, Format format) {
    const auto& cols = csv_columns();
    std::vector<SweepRecord> parsed;
    auto fill = [](SweepRecord& r, const std::vector<std::optional<double>>& f) {
        r.energy = f[0];
        for (std::size_t i = 0; i < 3; ++i) r.L_level[i] = f[1 + i];
        r.L1_atom = f[4];
        r.L2_atom = f[5];
        r.xi2_total = f[6];
        for (std::size_t i = 0; i < 3; ++i) r.xi2_pairs[i] = f[7 + i];
        if (!f[10] || !f[11]) throw IntegrityError("alpha0/beta0 missing");
        r.alpha0 = *f[10];
        r.beta0 = *f[11];
    };
    auto source_of = [](const std::string& s) {
        if (s == "numerical") return Source::Numerical;
        if (s == "variational") return Source::Variational;
        throw IntegrityError("unknown source '" + s + "' in output");
    };

    if (format == Format::Csv) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || split(line, ',') != cols) throw IntegrityError("unexpected CSV header");
        while (std::getline(in, line)) {
            const auto cells = split(line, ',');
            if (cells.size() != cols.size()) throw IntegrityError("CSV row has the wrong number of fields");
            SweepRecord r;
            const auto lam = parse_cell(cells[0]);
            if (!lam) throw IntegrityError("missing lambda");
            r.lambda = *lam;
            r.source = source_of(cells[1]);
            std::vector<std::optional<double>> f;
            for (std::size_t c = 2; c < cells.size(); ++c) f.push_back(parse_cell(cells[c]));
            fill(r, f);
            parsed.push_back(r);
        }
    } else {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw IntegrityError(std::string("output is not valid JSON: ") + e.what());
        }
        if (!doc.is_array()) throw IntegrityError("JSON output must be an array of records");
        for (const auto& obj : doc) {
            if (!obj.is_object() || obj.size() != cols.size()) throw IntegrityError("JSON record has the wrong fields");
            SweepRecord r;
            if (!obj.contains("lambda") || !obj["lambda"].is_number()) throw IntegrityError("missing lambda");
            r.lambda = obj["lambda"].get<double>();
            if (!obj.contains("source") || !obj["source"].is_string()) throw IntegrityError("missing source");
            r.source = source_of(obj["source"].get<std::string>());
            std::vector<std::optional<double>> f;
            for (std::size_t c = 2; c < cols.size(); ++c) {
                if (!obj.contains(cols[c])) throw IntegrityError("JSON record lacks " + cols[c]);
                const auto& v = obj[cols[c]];
                if (v.is_null())
                    f.emplace_back();
                else if (v.is_number())
                    f.emplace_back(v.get<double>());
                else
                    throw IntegrityError(cols[c] + " is not a number");
            }
            fill(r, f);
            parsed.push_back(r);
        }
    }
    check_records(parsed);
}

}  // namespace symqudit::sweep
