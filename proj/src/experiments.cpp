#include "dconc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace dconc {

void ExperimentConfig::validate() const {
    if (samples < 1) throw ConfigError("samples must be >= 1");
    if (dA < 2 || dB < 2) {
        throw ConfigError("dimensions must be >= 2, got (" + std::to_string(dA) + ", " + std::to_string(dB) + ")");
    }
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::size_t threads_from_environment() {
    if (const char* env = std::getenv("DCONC_THREADS")) {
        const long value = std::strtol(env, nullptr, 10);
        if (value >= 1) return static_cast<std::size_t>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Writes to cfg.output_path when set, otherwise to `fallback`.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open output file '" + path + "'");
    write(file);
    file.flush();
    if (!file) throw std::ios_base::failure("failed writing output file '" + path + "'");
}

} // namespace

// --- example1 ---------------------------------------------------------------

Example1Values example1_values(double f) {
    const DensityMatrix rho = werner_state(2, f);
    const double c = wootters_concurrence(rho).value;
    return {f, c * c, 4.0 * d_lower_bound(rho), mb_lower_bound_c2(rho)};
}

int cmd_example1(double f, std::ostream& out) {
    const Example1Values v = example1_values(f);
    const bool reference = f == kExample1F;
    const double expected[] = {0.25, 0.2297, 0.1667};
    const double got[] = {v.c2, v.d_lower_x4, v.mb_lower};
    const char* names[] = {"C^2 (Wootters)", "4[det(I-rho_A)-det(I-rho)]", "2[Tr rho^2-Tr rho_A^2]"};

    out << "werner state N=2 f=" << fmt12(f) << "\n";
    bool deviation = false;
    for (int i = 0; i < 3; ++i) {
        char line[160];
        if (reference) {
            const double diff = std::abs(got[i] - expected[i]);
            const bool bad = diff > kExample1Tolerance;
            deviation = deviation || bad;
            std::snprintf(line, sizeof line, "%-28s %16.12f  expected %.4f  diff %.2e%s\n", names[i], got[i],
                          expected[i], diff, bad ? "  DEVIATION" : "");
        } else {
            std::snprintf(line, sizeof line, "%-28s %16.12f\n", names[i], got[i]);
        }
        out << line;
    }
    char row[96];
    std::snprintf(row, sizeof row, "row: (%.4f, %.4f, %.4f)\n", v.c2, v.d_lower_x4, v.mb_lower);
    out << row;
    if (!reference) return exit_code::kSuccess;
    out << (deviation ? "status: DEVIATION\n" : "status: ok\n");
    return deviation ? exit_code::kDeviation : exit_code::kSuccess;
}

// --- bounds-scan ------------------------------------------------------------

ScanRow scan_sample(const ExperimentConfig& cfg, std::size_t index) {
    Rng rng(derive_seed(cfg.seed, index));
    const std::size_t n = cfg.dA * cfg.dB;
    const bool separable = index % 2 == 1;
    const DensityMatrix rho = separable ? random_separable(cfg.dA, cfg.dB, uniform_index(rng, 1, n), rng)
                                        : ginibre_random_density(cfg.dA, cfg.dB, uniform_index(rng, 1, n), rng);
    ScanRow row;
    row.seed_index = index;
    row.family = separable ? "separable" : "ginibre";
    row.dA = cfg.dA;
    row.dB = cfg.dB;
    row.rank = numerical_rank(rho, kRankCutoff);
    row.purity = purity(rho.matrix());
    row.bounds = bound_report(rho);
    row.nk = nielsen_kempe_check(rho);
    if (cfg.dA == 2 && cfg.dB == 2) {
        row.wootters_c = wootters_concurrence(rho).value;
        RoofConfig roof;
        roof.rng_seed = rng();
        row.roof_d = minimize_roof(rho, MeasureKind::DConcurrence, roof).value;
    }
    return row;
}

std::vector<ScanRow> run_bounds_scan(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ScanRow> rows(cfg.samples);
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) { rows[i] = scan_sample(cfg, i); });
    return rows;
}

ScanSummary summarize(const std::vector<ScanRow>& rows) {
    ScanSummary s;
    for (const ScanRow& r : rows) {
        ++s.rows;
        if (r.bounds.witness_entangled) ++s.witness_certified;
        if (!r.nk.pass_A || !r.nk.pass_B) ++s.nk_failures;
        if (r.dA == 2 && r.dB == 2) {
            ++s.two_qubit_rows;
            const double lhs = 4.0 * r.bounds.d_upper;
            const double rhs = r.bounds.purity_upper_c2;
            if (std::abs(lhs - rhs) <= 1e-12) {
                ++s.upper_equal;
            } else if (lhs < rhs) {
                ++s.upper_tighter;
            } else {
                ++s.upper_looser;
            }
        }
    }
    return s;
}

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
    out << "schema,seed_index,family,dA,dB,rank,purity,mb_lower_c2,purity_upper_c2,d_upper,d_lower,"
           "nk_pass_A,nk_pass_B,witness,wootters_c,roof_d\r\n";
    for (const ScanRow& r : rows) {
        out << kCsvSchema << ',' << r.seed_index << ',' << r.family << ',' << r.dA << ',' << r.dB << ',' << r.rank
            << ',' << fmt12(r.purity) << ',' << fmt12(r.bounds.mb_lower_c2) << ',' << fmt12(r.bounds.purity_upper_c2)
            << ',' << fmt12(r.bounds.d_upper) << ',' << fmt12(r.bounds.d_lower) << ',' << bool_text(r.nk.pass_A)
            << ',' << bool_text(r.nk.pass_B) << ','
            << (r.bounds.witness_entangled ? "entangled_certified" : "inconclusive") << ','
            << (r.wootters_c ? fmt12(*r.wootters_c) : "") << ',' << (r.roof_d ? fmt12(*r.roof_d) : "") << "\r\n";
    }
}

void write_scan_json(const std::vector<ScanRow>& rows, const ScanSummary& summary, std::ostream& out) {
    json data = json::array();
    for (const ScanRow& r : rows) {
        json j = {{"seed_index", r.seed_index},
                  {"family", r.family},
                  {"dA", r.dA},
                  {"dB", r.dB},
                  {"rank", r.rank},
                  {"purity", r.purity},
                  {"mb_lower_c2", r.bounds.mb_lower_c2},
                  {"purity_upper_c2", r.bounds.purity_upper_c2},
                  {"d_upper", r.bounds.d_upper},
                  {"d_lower", r.bounds.d_lower},
                  {"nk_pass_A", r.nk.pass_A},
                  {"nk_pass_B", r.nk.pass_B},
                  {"witness", r.bounds.witness_entangled ? "entangled_certified" : "inconclusive"}};
        j["wootters_c"] = r.wootters_c ? json(*r.wootters_c) : json(nullptr);
        j["roof_d"] = r.roof_d ? json(*r.roof_d) : json(nullptr);
        data.push_back(std::move(j));
    }
    const json doc = {{"schema", kCsvSchema},
                      {"rows", data},
                      {"summary",
                       {{"rows", summary.rows},
                        {"witness_certified", summary.witness_certified},
                        {"nk_failures", summary.nk_failures},
                        {"two_qubit_rows", summary.two_qubit_rows},
                        {"upper_tighter", summary.upper_tighter},
                        {"upper_equal", summary.upper_equal},
                        {"upper_looser", summary.upper_looser}}}};
    out << doc.dump(2) << "\n";
}

void write_scan_summary(const ScanSummary& s, std::ostream& out) {
    out << "summary: rows=" << s.rows << " witness_certified=" << s.witness_certified
        << " nk_failures=" << s.nk_failures << "\n";
    if (s.two_qubit_rows > 0) {
        out << "summary: 4*d_upper vs purity_upper_c2 over " << s.two_qubit_rows
            << " two-qubit rows: tighter=" << s.upper_tighter << " equal=" << s.upper_equal
            << " looser=" << s.upper_looser << "\n";
    } else {
        out << "summary: 4*d_upper vs purity_upper_c2 not compared (scale only established for two qubits)\n";
    }
}

int cmd_bounds_scan(const ExperimentConfig& cfg, std::ostream& out, std::ostream& console) {
    const std::vector<ScanRow> rows = run_bounds_scan(cfg);
    const ScanSummary summary = summarize(rows);
    emit(cfg.output_path, out, [&](std::ostream& sink) {
        if (cfg.format == OutputFormat::Csv) {
            write_scan_csv(rows, sink);
        } else {
            write_scan_json(rows, summary, sink);
        }
    });
    write_scan_summary(summary, console);
    return exit_code::kSuccess;
}

// --- prop2 ------------------------------------------------------------------

Prop2Sample prop2_sample(const ExperimentConfig& cfg, std::size_t index, std::optional<json>* counterexample) {
    const std::uint64_t seed = derive_seed(cfg.seed, index);
    Rng rng(seed);
    const std::size_t n = cfg.dA * cfg.dB;
    const DensityMatrix rho = ginibre_random_density(cfg.dA, cfg.dB, uniform_index(rng, 1, n), rng);

    RoofConfig roof;
    roof.rng_seed = rng();
    const RoofEstimate est = minimize_roof(rho, MeasureKind::DConcurrence, roof);
    Prop2Sample s;
    s.index = index;
    s.seed = seed;
    s.rank = est.rank;
    s.roof_d = est.value;
    s.d_lower = d_lower_bound(rho);
    s.margin = est.value * est.value - s.d_lower;
    if (counterexample && s.margin < kCounterexampleMargin) {
        *counterexample = json{{"seed", seed},
                               {"sample_index", index},
                               {"campaign_seed", cfg.seed},
                               {"state", to_json(rho)},
                               {"d_lower", s.d_lower},
                               {"d_upper", d_upper_bound(rho)},
                               {"margin", s.margin},
                               {"roof_estimate", to_json(est, roof)},
                               {"decomposition", to_json(est.decomposition)}};
    }
    return s;
}

Prop2Report run_prop2_search(const ExperimentConfig& cfg) {
    cfg.validate();
    Prop2Report report;
    report.config = cfg;
    report.samples.resize(cfg.samples);
    std::vector<std::optional<json>> found(cfg.samples);
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) { report.samples[i] = prop2_sample(cfg, i, &found[i]); });

    double total = 0.0;
    report.min_margin = report.samples.front().margin;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        total += report.samples[i].margin;
        report.min_margin = std::min(report.min_margin, report.samples[i].margin);
        if (found[i]) report.counterexamples.push_back(std::move(*found[i]));
    }
    report.mean_margin = total / static_cast<double>(cfg.samples);
    return report;
}

json to_json(const Prop2Report& report) {
    json samples = json::array();
    for (const Prop2Sample& s : report.samples) {
        samples.push_back({{"index", s.index},
                           {"seed", s.seed},
                           {"rank", s.rank},
                           {"roof_d", s.roof_d},
                           {"d_lower", s.d_lower},
                           {"margin", s.margin}});
    }
    return {{"schema", kCsvSchema},
            {"command", "prop2"},
            {"dA", report.config.dA},
            {"dB", report.config.dB},
            {"samples", report.config.samples},
            {"seed", report.config.seed},
            {"margin_threshold", kCounterexampleMargin},
            {"summary",
             {{"min_margin", report.min_margin},
              {"mean_margin", report.mean_margin},
              {"counterexamples", report.counterexamples.size()}}},
            {"rows", samples},
            {"counterexamples", report.counterexamples}};
}

int cmd_prop2(const ExperimentConfig& cfg, std::ostream& out, std::ostream& console) {
    const Prop2Report report = run_prop2_search(cfg);
    emit(cfg.output_path, out, [&](std::ostream& sink) { sink << to_json(report).dump(2) << "\n"; });
    console << "prop2: dims " << cfg.dA << "x" << cfg.dB << " samples=" << cfg.samples
            << " min_margin=" << fmt12(report.min_margin) << " mean_margin=" << fmt12(report.mean_margin)
            << " counterexamples=" << report.counterexamples.size() << "\n";
    if (!report.counterexamples.empty()) {
        console << "prop2: FINDING - " << report.counterexamples.size()
                << " state(s) violate roof_d^2 >= det(I-rho_A) - det(I-rho) beyond " << fmt12(kCounterexampleMargin)
                << "; see the counterexamples array in the report\n";
    }
    return exit_code::kSuccess;
}

// --- eval -------------------------------------------------------------------

json evaluate_state(const DensityMatrix& rho) {
    const BoundReport b = bound_report(rho);
    const NielsenKempeResult nk = nielsen_kempe_check(rho);
    const std::size_t rank = numerical_rank(rho, kRankCutoff);
    json j = {{"dA", rho.dA()},
              {"dB", rho.dB()},
              {"rank", rank},
              {"purity", purity(rho.matrix())},
              {"mb_lower_c2", b.mb_lower_c2},
              {"purity_upper_c2", b.purity_upper_c2},
              {"d_upper", b.d_upper},
              {"d_lower", b.d_lower},
              {"witness", to_string(separability_witness(rho))},
              {"nk_pass_A", nk.pass_A},
              {"nk_pass_B", nk.pass_B}};
    if (rank == 1) {
        // support is a single pure state
        const Decomposition dec = decomposition_from_isometry(rho, ComplexMatrix::Identity(1, 1));
        const PureState& psi = dec.members.front();
        j["concurrence"] = concurrence_pure(psi).value;
        j["d_concurrence"] = d_concurrence_pure(psi).value;
        j["d_concurrence_b"] = d_concurrence_pure_b(psi).value;
    }
    if (rho.dA() == 2 && rho.dB() == 2) {
        j["wootters_c"] = wootters_concurrence(rho).value;
        const RoofConfig cfg;
        j["roof_c"] = minimize_roof(rho, MeasureKind::Concurrence, cfg).value;
        j["roof_d"] = minimize_roof(rho, MeasureKind::DConcurrence, cfg).value;
    }
    return j;
}

int cmd_eval(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        const StateFile state = load_state(path);
        const DensityMatrix rho = std::holds_alternative<DensityMatrix>(state)
                                      ? std::get<DensityMatrix>(state)
                                      : density_from_pure(std::get<PureState>(state));
        json report = evaluate_state(rho);
        if (const auto* psi = std::get_if<PureState>(&state)) {
            report["concurrence"] = concurrence_pure(*psi).value;
            report["d_concurrence"] = d_concurrence_pure(*psi).value;
            report["d_concurrence_b"] = d_concurrence_pure_b(*psi).value;
        }
        out << report.dump(2) << "\n";
        return exit_code::kSuccess;
    } catch (const ParseError& e) {
        err << "error: " << path << ": " << e.what() << "\n";
    } catch (const std::logic_error& e) {
        err << "error: " << path << ": invalid state: " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_code::kInputError;
}

} // namespace dconc
