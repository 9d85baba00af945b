// lasuscc: command-line front end for the LAS-USCCSD emulator.
//
// Exit status: 0 success, 1 bad input or flags, 2 numerical non-convergence
// (whatever was computed is still written to --out / --report).

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "lasuscc/ansatz.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/fcidump.hpp"
#include "lasuscc/job.hpp"
#include "lasuscc/las.hpp"
#include "lasuscc/pipeline.hpp"
#include "lasuscc/resources.hpp"
#include "lasuscc/vqe.hpp"

#ifndef LASUSCC_VERSION
#define LASUSCC_VERSION "unknown"
#endif

using namespace lasuscc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kReportSchema = 1;
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

/// Error tagged with the stage that raised it; main() turns it into a message.
struct StageError : std::runtime_error {
    StageError(std::string stage, const std::string& what, int code)
        : std::runtime_error(what), stage(std::move(stage)), code(code) {}
    std::string stage;
    int code;
};

struct Globals {
    std::string job;
    std::string fcidump;
    std::string out;
    std::string report;
    int threads = 1;
    std::uint64_t seed = 0; // reserved: nothing is stochastic yet
};

struct Selection {
    std::optional<double> epsilon;
    std::optional<std::size_t> top;
};

std::string fmt_eps(double e) { return std::isinf(e) ? "inf" : fmt::format("{:.6g}", e); }

std::string input_name(const Globals& g) {
    if (!g.job.empty()) return g.job;
    if (!g.fcidump.empty()) return g.fcidump;
    return "<no input>";
}

/// Runs `fn`, rethrowing library errors as StageError for `stage`.
template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConvergenceError& e) {
        throw StageError(name, e.what(), kExitNotConverged);
    } catch (const ValidationError& e) {
        throw StageError(name, e.what(), kExitInput);
    } catch (const ParseError& e) {
        throw StageError(name, e.what(), kExitInput);
    } catch (const ShapeError& e) {
        throw StageError(name, e.what(), kExitInput);
    }
}

// ---------------------------------------------------------------------------
// Inputs

struct Context {
    Globals globals;
    JobConfig job;
    PreparedSystem sys;
    json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

JobConfig load_job(const Globals& g) {
    if (g.job.empty() && g.fcidump.empty()) throw StageError("input", "one of --job or --fcidump is required", kExitInput);
    JobConfig job;
    if (!g.job.empty()) {
        job = stage("job", [&] { return read_job(g.job); });
    }
    if (!g.fcidump.empty()) {
        const auto hdr = stage("fcidump", [&] { return read_fcidump_header(g.fcidump); });
        job.geometry.reset();
        job.fcidump = std::filesystem::absolute(g.fcidump);
        if (g.job.empty()) {
            // Without a job file the whole active space is one fragment.
            Fragment f;
            for (std::size_t p = 0; p < hdr.norb; ++p) f.orbitals.push_back(static_cast<int>(p));
            f.n_alpha = (hdr.nelec + hdr.ms2) / 2;
            f.n_beta = (hdr.nelec - hdr.ms2) / 2;
            job.layout.fragments = {f};
            job.name = std::filesystem::path(g.fcidump).stem().string();
        }
        stage("job", [&] { job.layout.validate(hdr.norb, hdr.nelec); });
    }
    return job;
}

Context make_context(const Globals& g, const std::string& command) {
    Context c;
    c.globals = g;
    c.job = load_job(g);
    c.sys = stage("integrals", [&] { return prepare_system(c.job); });
    c.report["schema_version"] = kReportSchema;
    c.report["tool"] = {{"name", "lasuscc"}, {"version", LASUSCC_VERSION}};
    c.report["command"] = command;
    c.report["job"] = json::parse(job_to_json(c.job));
    c.report["input"] = {{"source", c.sys.source},
                         {"n_orb", c.sys.ints.n_orb},
                         {"n_alpha", c.sys.ints.n_alpha},
                         {"n_beta", c.sys.ints.n_beta}};
    if (c.sys.rhf_energy) {
        c.report["input"]["rhf_energy"] = *c.sys.rhf_energy;
        c.report["input"]["scf_iterations"] = c.sys.scf_iterations;
    }
    c.report["stages"] = json::object();
    return c;
}

std::optional<std::filesystem::path> report_path(const Context& c) {
    if (!c.globals.report.empty()) return std::filesystem::path(c.globals.report);
    return c.job.output.report;
}

std::optional<std::filesystem::path> csv_path(const Context& c) {
    if (!c.globals.out.empty()) return std::filesystem::path(c.globals.out);
    return c.job.output.csv;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StageError("output", fmt::format("cannot open '{}' for writing", path.string()), kExitInput);
    out << text;
}

void write_report(Context& c) {
    const auto path = report_path(c);
    if (!path) return;
    c.report["timing"] = {
        {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - c.start).count()}};
    write_text(*path, c.report.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Shared stages

Sector full_sector(const PreparedSystem& sys) {
    return {static_cast<int>(sys.ints.n_orb), sys.ints.n_alpha, sys.ints.n_beta};
}

double run_casci(Context& c) {
    const CasciResult r = stage("casci", [&] { return casci_ground_state(c.sys.ints, full_sector(c.sys)); });
    const double s2 = s_squared_expectation(r.state);
    c.report["stages"]["casci"] = {
        {"energy", r.energy}, {"s2", s2}, {"dimension", r.state.sector.dim()}, {"davidson", r.used_davidson},
        {"residual", r.residual}};
    return r.energy;
}

LasState run_las(Context& c) {
    try {
        LasState las = lasci(c.sys.ints, c.sys.layout);
        json frags = json::array();
        for (std::size_t k = 0; k < las.fragments.size(); ++k) {
            const Fragment& f = c.sys.layout.fragments[k];
            frags.push_back({{"index", k},
                             {"orbitals", f.orbitals},
                             {"n_alpha", f.n_alpha},
                             {"n_beta", f.n_beta},
                             {"energy", las.fragment_energies[k]}});
        }
        c.report["stages"]["las"] = {{"energy", las.energy},        {"converged", las.converged},
                                     {"iterations", las.iterations}, {"energy_trace", las.energy_trace},
                                     {"fragments", frags}};
        return las;
    } catch (const ConvergenceError& e) {
        c.report["stages"]["las"] = {{"converged", false}, {"energy_trace", e.history()}, {"error", e.what()}};
        write_report(c);
        throw StageError("las", e.what(), kExitNotConverged);
    } catch (const ValidationError& e) {
        throw StageError("las", e.what(), kExitInput);
    }
}

struct Screened {
    LasState las;
    QubitMap map;
    QubitHamiltonian h;
    Statevector ref;
    GeneratorPool pool;
};

Screened run_screen(Context& c) {
    LasState las = run_las(c);
    QubitMap map(c.sys.layout);
    QubitHamiltonian h(c.sys.ints, map);
    Statevector ref = assemble_statevector(las, map);
    GeneratorPool pool = enumerate_pool(c.sys.layout);
    screen_gradients(pool, ref, h, c.globals.threads);
    json hist = json::array();
    for (const auto& b : gradient_histogram(pool))
        hist.push_back({{"lower", b.lower}, {"upper", std::isinf(b.upper) ? json("inf") : json(b.upper)},
                        {"count", b.count}});
    c.report["stages"]["screen"] = {{"pool_size", pool.size()},
                                    {"n_singles", pool.n_singles},
                                    {"n_doubles", pool.n_doubles},
                                    {"n_qubits", map.n_qubits()},
                                    {"histogram", hist}};
    return {std::move(las), std::move(map), std::move(h), std::move(ref), std::move(pool)};
}

std::vector<std::size_t> choose(const GeneratorPool& pool, const Selection& sel) {
    return stage("select", [&] { return sel.top ? select_top(pool, *sel.top) : select(pool, *sel.epsilon); });
}

double s2_of(const VqeResult& r, const TrotterAnsatz& ansatz, const Screened& s) {
    const Statevector psi = ansatz.prepare(s.ref, r.amplitudes);
    return s_squared_expectation(psi, s.map, s.pool.layout.n_alpha(), s.pool.layout.n_beta());
}

json result_json(const VqeResult& r, const GeneratorPool& pool, double s2) {
    json amps = json::array();
    for (std::size_t k = 0; k < r.order.size(); ++k)
        amps.push_back({{"generator", pool.generators[r.order[k]].label(static_cast<int>(pool.layout.n_orb()))},
                        {"amplitude", r.amplitudes[k]}});
    return {{"energy", r.energy},
            {"initial_energy", r.initial_energy},
            {"s2", s2},
            {"converged", r.converged},
            {"exit_reason", r.exit_reason},
            {"iterations", r.iterations},
            {"evaluations", r.evaluations},
            {"gradient_norm", r.gradient_norm},
            {"energy_trace", r.energy_trace},
            {"amplitudes", amps}};
}

constexpr const char* kCsvHeader = "epsilon,n_params,energy,dE_vs_reference_kcal_mol,iterations,n_cnot_est,n_sqg_est\n";

std::string csv_row(double epsilon, std::size_t n_params, const VqeResult& r, double reference,
                    const GateCountEstimate& g) {
    return fmt::format("{},{},{:.12f},{:.6f},{},{},{}\n", fmt_eps(epsilon), n_params, r.energy,
                       (r.energy - reference) * kHartreeToKcalMol, r.iterations, g.n_cnot, g.n_sqg);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_count(const Globals& g) {
    const JobConfig job = load_job(g);
    const ParameterCount pc = count_parameters(job.layout);
    fmt::print("singles {}, doubles {}, total {}\n", pc.singles, pc.doubles, pc.total());
    if (!g.out.empty()) {
        write_text(g.out, json({{"schema_version", kReportSchema},
                                {"singles", pc.singles},
                                {"doubles", pc.doubles},
                                {"total", pc.total()}})
                              .dump(2) +
                              "\n");
    }
    return kExitOk;
}

int cmd_casci(const Globals& g) {
    Context c = make_context(g, "casci");
    const double e = run_casci(c);
    const auto& st = c.report["stages"]["casci"];
    fmt::print("CASCI energy {:.12f} Eh  <S^2> {:.6f}  dimension {}\n", e, st["s2"].get<double>(),
               st["dimension"].get<std::size_t>());
    if (!g.out.empty()) write_text(g.out, st.dump(2) + "\n");
    write_report(c);
    return kExitOk;
}

int cmd_las(const Globals& g) {
    Context c = make_context(g, "las");
    const LasState las = run_las(c);
    for (std::size_t k = 0; k < las.fragments.size(); ++k)
        fmt::print("fragment {}  E_internal {:.12f}\n", k, las.fragment_energies[k]);
    fmt::print("LASCI energy {:.12f} Eh after {} sweeps\n", las.energy, las.iterations);
    if (!g.out.empty()) write_text(g.out, c.report["stages"]["las"].dump(2) + "\n");
    write_report(c);
    return kExitOk;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

int cmd_screen(const Globals& g, const Selection& sel) {
    Context c = make_context(g, "screen");
    Screened s = run_screen(c);
    std::vector<std::size_t> chosen;
    if (sel.epsilon || sel.top) {
        chosen = choose(s.pool, sel);
        mark_selected(s.pool, chosen);
        c.report["stages"]["screen"]["n_selected"] = chosen.size();
    }
    const int n = static_cast<int>(s.pool.layout.n_orb());
    std::string csv = "index,label,kind,abs_gradient,gradient,selected\n";
    for (std::size_t i = 0; i < s.pool.size(); ++i) {
        const Generator& gen = s.pool.generators[i];
        csv += fmt::format("{},{},{},{:.6e},{:.12e},{}\n", i, csv_quote(gen.label(n)),
                           gen.kind == ExcitationKind::Single ? "single" : "double", std::abs(gen.gradient),
                           gen.gradient, gen.selected ? 1 : 0);
    }
    fmt::print("{} generators ({} singles, {} doubles) on {} qubits\n", s.pool.size(), s.pool.n_singles,
               s.pool.n_doubles, s.map.n_qubits());
    for (const auto& b : gradient_histogram(s.pool))
        fmt::print("  |g| in [{:.0e}, {:.0e})  {:>6}\n", b.lower, b.upper, b.count);
    if (sel.epsilon || sel.top) fmt::print("selected {}\n", chosen.size());
    if (const auto p = csv_path(c)) write_text(*p, csv);
    write_report(c);
    return kExitOk;
}

int cmd_run(const Globals& g, const Selection& sel) {
    Context c = make_context(g, "run");
    const double reference = run_casci(c);
    Screened s = run_screen(c);
    const auto chosen = choose(s.pool, sel);
    const TrotterAnsatz ansatz(s.pool, chosen, s.map);
    const VqeResult r = minimize(VqeProblem(ansatz, s.ref, s.h), std::vector<double>(ansatz.size(), 0.0),
                                 c.job.optimizer);
    const GateCountEstimate gates = estimate(s.pool, chosen);
    const double s2 = s2_of(r, ansatz, s);
    const double eps = sel.epsilon.value_or(std::abs(s.pool.generators[chosen.empty() ? 0 : chosen.back()].gradient));

    c.report["stages"]["vqe"] = result_json(r, s.pool, s2);
    c.report["stages"]["vqe"]["epsilon"] = std::isinf(eps) ? json("inf") : json(eps);
    c.report["stages"]["vqe"]["n_params"] = chosen.size();
    c.report["stages"]["vqe"]["gates"] = {{"n_sqg", gates.n_sqg}, {"n_cnot", gates.n_cnot}};

    fmt::print("{} parameters  E {:.12f} Eh  dE {:.4f} kcal/mol  <S^2> {:.6f}  {} iterations{}\n", chosen.size(),
               r.energy, (r.energy - reference) * kHartreeToKcalMol, s2, r.iterations,
               r.converged ? "" : "  (not converged)");
    if (const auto p = csv_path(c)) write_text(*p, kCsvHeader + csv_row(eps, chosen.size(), r, reference, gates));
    write_report(c);
    return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const Globals& g, const std::vector<double>& ladder_override) {
    Context c = make_context(g, "sweep");
    const std::vector<double> ladder = ladder_override.empty() ? c.job.epsilon_ladder : ladder_override;
    const double reference = run_casci(c);
    Screened s = run_screen(c);
    std::string csv = kCsvHeader;
    json runs = json::array();
    bool all_converged = true;
    const auto csv_file = csv_path(c);
    fmt::print("{:>10} {:>8} {:>18} {:>12} {:>6}\n", "epsilon", "params", "energy", "dE kcal/mol", "iters");
    stage("sweep", [&] {
        sweep(s.pool, ladder, c.job.warm_start, s.ref, s.h, c.job.optimizer, [&](const SweepRecord& rec) {
            csv += csv_row(rec.epsilon, rec.n_params, rec.result, reference, rec.gates);
            fmt::print("{:>10} {:>8} {:>18.12f} {:>12.6f} {:>6}{}\n", fmt_eps(rec.epsilon), rec.n_params,
                       rec.result.energy, (rec.result.energy - reference) * kHartreeToKcalMol, rec.result.iterations,
                       rec.result.converged ? "" : "  not converged");
            json j = {{"epsilon", std::isinf(rec.epsilon) ? json("inf") : json(rec.epsilon)},
                      {"n_params", rec.n_params},
                      {"n_singles", rec.n_singles},
                      {"n_doubles", rec.n_doubles},
                      {"gates", {{"n_sqg", rec.gates.n_sqg}, {"n_cnot", rec.gates.n_cnot}}},
                      {"energy", rec.result.energy},
                      {"converged", rec.result.converged},
                      {"exit_reason", rec.result.exit_reason},
                      {"iterations", rec.result.iterations},
                      {"evaluations", rec.result.evaluations}};
            runs.push_back(std::move(j));
            all_converged = all_converged && rec.result.converged;
            // Keep partial output on disk as the ladder progresses.
            if (csv_file) write_text(*csv_file, csv);
        });
        return 0;
    });
    c.report["stages"]["sweep"] = {{"reference", "casci"}, {"reference_energy", reference}, {"runs", runs}};
    write_report(c);
    return all_converged ? kExitOk : kExitNotConverged;
}

struct ResourceArgs {
    std::optional<std::size_t> singles, doubles, full_singles, full_doubles;
    std::vector<double> epsilons;
};

int cmd_resources(const Globals& g, const ResourceArgs& a) {
    struct Row {
        std::string method;
        std::string threshold;
        std::size_t singles, doubles;
    };
    std::vector<Row> rows;
    std::size_t fs = 0, fd = 0;
    if (a.singles || a.doubles) {
        if (!(a.singles && a.doubles)) throw StageError("resources", "--singles and --doubles go together", kExitInput);
        if (a.full_singles && a.full_doubles) {
            fs = *a.full_singles;
            fd = *a.full_doubles;
        } else if (!g.job.empty() || !g.fcidump.empty()) {
            const ParameterCount pc = count_parameters(load_job(g).layout);
            fs = pc.singles;
            fd = pc.doubles;
        } else {
            throw StageError("resources", "give --full-singles/--full-doubles or a --job for the full pool", kExitInput);
        }
        rows.push_back({"LASUSCCSD", "-", *a.singles, *a.doubles});
    } else {
        Context c = make_context(g, "resources");
        Screened s = run_screen(c);
        fs = s.pool.n_singles;
        fd = s.pool.n_doubles;
        const std::vector<double> eps = a.epsilons.empty() ? c.job.epsilon_ladder : a.epsilons;
        for (double e : eps) {
            const auto chosen = stage("select", [&] { return select(s.pool, e); });
            std::size_t ns = 0;
            for (auto i : chosen) ns += s.pool.generators[i].kind == ExcitationKind::Single;
            rows.push_back({"LASUSCCSD", fmt_eps(e), ns, chosen.size() - ns});
        }
    }
    const GateCountEstimate full = estimate(fs, fd);
    std::string csv = "method,epsilon,n_params,n_singles,n_doubles,n_sqg,n_cnot,percent_cnot\n";
    fmt::print("{:<10} {:>9} {:>8} {:>10} {:>10} {:>8}\n", "method", "epsilon", "params", "SQG", "CNOT", "%CNOT");
    fmt::print("{:<10} {:>9} {:>8} {:>10} {:>10} {:>8}\n", "LASUCCSD", "-", fs + fd, full.n_sqg, full.n_cnot, "-");
    csv += fmt::format("LASUCCSD,-,{},{},{},{},{},\n", fs + fd, fs, fd, full.n_sqg, full.n_cnot);
    for (const Row& r : rows) {
        const GateCountEstimate e = estimate(r.singles, r.doubles);
        const double pct = stage("resources", [&] { return percent_cnot(e, full); });
        fmt::print("{:<10} {:>9} {:>8} {:>10} {:>10} {:>8.2f}\n", r.method, r.threshold, r.singles + r.doubles,
                   e.n_sqg, e.n_cnot, pct);
        csv += fmt::format("{},{},{},{},{},{},{},{:.2f}\n", r.method, r.threshold, r.singles + r.doubles, r.singles,
                           r.doubles, e.n_sqg, e.n_cnot, pct);
    }
    if (!g.out.empty()) write_text(g.out, csv);
    return kExitOk;
}

struct JArgs {
    std::string hs_report, ls_report;
    std::optional<double> e_hs, e_ls, s2_hs, s2_ls;
};

std::pair<double, double> energy_and_s2(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StageError("jcoupling", fmt::format("cannot open report '{}'", path), kExitInput);
    try {
        const json r = json::parse(in);
        const json& v = r.at("stages").at("vqe");
        return {v.at("energy").get<double>(), v.at("s2").get<double>()};
    } catch (const json::exception& e) {
        throw StageError("jcoupling", fmt::format("{}: not a run report ({})", path, e.what()), kExitInput);
    }
}

int cmd_jcoupling(const JArgs& a) {
    double e_hs = 0, e_ls = 0, s2_hs = 0, s2_ls = 0;
    if (!a.hs_report.empty() || !a.ls_report.empty()) {
        if (a.hs_report.empty() || a.ls_report.empty())
            throw StageError("jcoupling", "--hs and --ls reports go together", kExitInput);
        std::tie(e_hs, s2_hs) = energy_and_s2(a.hs_report);
        std::tie(e_ls, s2_ls) = energy_and_s2(a.ls_report);
    } else {
        if (!(a.e_hs && a.e_ls && a.s2_hs && a.s2_ls))
            throw StageError("jcoupling", "need --hs/--ls reports or all of --e-hs --e-ls --s2-hs --s2-ls", kExitInput);
        e_hs = *a.e_hs;
        e_ls = *a.e_ls;
        s2_hs = *a.s2_hs;
        s2_ls = *a.s2_ls;
    }
    const double j = stage("jcoupling", [&] { return yamaguchi_j(e_hs, e_ls, s2_hs, s2_ls); });
    fmt::print("E_HS {:.10f}  E_LS {:.10f}  <S^2>_HS {:.4f}  <S^2>_LS {:.4f}\n", e_hs, e_ls, s2_hs, s2_ls);
    fmt::print("J = {:.1f} cm^-1 ({:.4f})\n", j, j);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LAS-USCCSD emulator: fragment CI, gradient screening and selected UCC on a statevector"};
    app.set_version_flag("--version", std::string(LASUSCC_VERSION));
    app.require_subcommand(1);

    Globals g;
    if (const char* env = std::getenv("LAS_USCC_THREADS")) {
        try {
            g.threads = std::stoi(env);
        } catch (const std::exception&) {
            fmt::print(stderr, "error [input]: LAS_USCC_THREADS='{}' is not an integer\n", env);
            return kExitInput;
        }
    }
    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--job", g.job, "job file (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--fcidump", g.fcidump, "FCIDUMP file; overrides the job's integral source")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", g.out, "machine-readable output (CSV or JSON, per subcommand)");
        sub->add_option("--report", g.report, "JSON run report");
        sub->add_option("--threads", g.threads, "worker threads for gradient screening (env LAS_USCC_THREADS)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", g.seed, "reserved; no stochastic components yet");
    };

    Selection sel;
    auto add_selection = [&](CLI::App* sub, bool required) {
        auto* e = sub->add_option("--epsilon", sel.epsilon, "gradient threshold")->check(CLI::NonNegativeNumber);
        auto* t = sub->add_option("--top", sel.top, "keep the N largest gradients");
        e->excludes(t);
        if (required) sub->require_option(1, 1);
    };

    auto* count = app.add_subcommand("count", "print the size of the generator pool");
    add_globals(count);
    auto* casci = app.add_subcommand("casci", "exact diagonalization in the active space");
    add_globals(casci);
    auto* las = app.add_subcommand("las", "fixed-orbital LASCI reference");
    add_globals(las);
    auto* screen = app.add_subcommand("screen", "gradients of every pool generator at the LAS state");
    add_globals(screen);
    add_selection(screen, false);
    auto* run = app.add_subcommand("run", "VQE on one selected generator subset");
    add_globals(run);
    add_selection(run, false);
    std::vector<double> ladder;
    auto* sweep_cmd = app.add_subcommand("sweep", "VQE down a ladder of gradient thresholds");
    add_globals(sweep_cmd);
    sweep_cmd->add_option("--ladder", ladder, "thresholds, strictly decreasing (default: the job's)")->delimiter(',');

    ResourceArgs ra;
    auto* res = app.add_subcommand("resources", "gate-count estimates against the full pool");
    add_globals(res);
    res->add_option("--singles", ra.singles, "selected singles");
    res->add_option("--doubles", ra.doubles, "selected doubles");
    res->add_option("--full-singles", ra.full_singles, "singles in the full pool");
    res->add_option("--full-doubles", ra.full_doubles, "doubles in the full pool");
    res->add_option("--epsilon", ra.epsilons, "thresholds to tabulate (with --job)")->delimiter(',');

    JArgs ja;
    auto* jc = app.add_subcommand("jcoupling", "Yamaguchi exchange coupling from high- and low-spin results");
    jc->add_option("--hs", ja.hs_report, "run report of the high-spin state")->check(CLI::ExistingFile);
    jc->add_option("--ls", ja.ls_report, "run report of the low-spin state")->check(CLI::ExistingFile);
    jc->add_option("--e-hs", ja.e_hs, "high-spin energy (Eh)");
    jc->add_option("--e-ls", ja.e_ls, "low-spin energy (Eh)");
    jc->add_option("--s2-hs", ja.s2_hs, "high-spin <S^2>");
    jc->add_option("--s2-ls", ja.s2_ls, "low-spin <S^2>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return kExitOk;
        fmt::print(stderr, "\n{}", app.help());
        return kExitInput;
    }

    try {
        if (*count) return cmd_count(g);
        if (*casci) return cmd_casci(g);
        if (*las) return cmd_las(g);
        if (*screen) return cmd_screen(g, sel);
        if (*run) {
            if (!sel.epsilon && !sel.top) throw StageError("run", "give --epsilon or --top", kExitInput);
            return cmd_run(g, sel);
        }
        if (*sweep_cmd) return cmd_sweep(g, ladder);
        if (*res) return cmd_resources(g, ra);
        if (*jc) return cmd_jcoupling(ja);
    } catch (const StageError& e) {
        fmt::print(stderr, "error [{}] {}: {}\n", e.stage, e.stage == "jcoupling" ? "-" : input_name(g), e.what());
        return e.code;
    } catch (const Error& e) {
        fmt::print(stderr, "error [pipeline] {}: {}\n", input_name(g), e.what());
        return kExitInput;
    }
    return kExitInput;
}
