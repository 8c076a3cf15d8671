#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "colsel/bounds.hpp"
#include "colsel/csv.hpp"
#include "colsel/errors.hpp"
#include "colsel/harness.hpp"
#include "colsel/matrix.hpp"
#include "colsel/rng.hpp"
#include "colsel/selection.hpp"
#include "colsel/version.hpp"

namespace colsel_cli {

namespace {

using colsel::Error;
using nlohmann::json;

std::uint64_t draw_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

json report_envelope(const std::string& command, json config, json results) {
    return json{{"schema_version", colsel::kReportSchemaVersion},
                {"library_version", colsel::kVersionString},
                {"command", json{{"name", command}, {"config", std::move(config)}}},
                {"results", std::move(results)}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) colsel::fail("IoError", "cannot write " + path);
    out << text;
    if (!out) colsel::fail("IoError", "write failed for " + path);
}

void emit_report(const json& doc, const std::string& report_path) {
    const std::string text = doc.dump(2) + "\n";
    if (report_path.empty()) {
        std::cout << text;
    } else {
        write_text(report_path, text);
    }
}

struct InputFlags {
    std::string path;
    std::string orientation = "columns";
    bool require_normalized = false;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
    cmd->add_option("input", in.path, "CSV file with the data matrix")->required();
    cmd->add_option("--orientation", in.orientation, "columns | rows : which file axis holds the features")
        ->check(CLI::IsMember({"columns", "rows"}));
    cmd->add_flag("--require-normalized", in.require_normalized,
                  "reject input whose columns are not already unit-norm");
}

colsel::ColumnMatrix load_input(const InputFlags& in) {
    colsel::DatasetHandle handle;
    handle.path = in.path;
    handle.orientation = in.orientation == "rows" ? colsel::Orientation::rows_are_features
                                                  : colsel::Orientation::columns_are_features;
    handle.policy = in.require_normalized ? colsel::NormalizationPolicy::require_normalized
                                          : colsel::NormalizationPolicy::normalize;
    return colsel::load_csv(handle);
}

json input_config(const InputFlags& in) {
    return json{{"input", in.path},
                {"orientation", in.orientation},
                {"normalization", in.require_normalized ? "require-normalized" : "normalize"}};
}

json steps_to_json(const colsel::SelectionTrace& trace) {
    json steps = json::array();
    for (const auto& st : trace.steps) {
        json rec{{"s", st.s}, {"j", st.index}, {"score", st.score},
                 {"alpha", st.alpha}, {"eta", st.eta}};
        if (st.exact_lambda_min) rec["lambda_exact"] = *st.exact_lambda_min;
        steps.push_back(std::move(rec));
    }
    return steps;
}

std::string selection_trace_csv(const colsel::SelectionTrace& trace) {
    std::ostringstream out;
    out << "s,j,score,alpha,eta,lambda_exact\n";
    for (const auto& st : trace.steps) {
        out << st.s << ',' << st.index << ',' << colsel::format_double(st.score) << ','
            << colsel::format_double(st.alpha) << ',' << colsel::format_double(st.eta) << ',';
        if (st.exact_lambda_min) out << colsel::format_double(*st.exact_lambda_min);
        out << '\n';
    }
    return out.str();
}

json selection_results_json(const colsel::SelectionTrace& trace) {
    json results{{"final_T", trace.final_T},
                 {"final_eta", trace.final_eta},
                 {"stop_reason", colsel::to_string(trace.stop_reason)},
                 {"mu", trace.mu},
                 {"steps", steps_to_json(trace)}};
    if (trace.final_exact_lambda_min) results["final_lambda_min"] = *trace.final_exact_lambda_min;
    return results;
}

json compare_report_json(const colsel::CompareReport& report) {
    json stats = json::array();
    for (const auto& st : report.stats) {
        stats.push_back(json{{"method", colsel::to_string(st.method)},
                             {"mean_sigma_min", st.mean_sigma_min},
                             {"median_sigma_min", st.median_sigma_min},
                             {"mean_wall_seconds", st.mean_wall_seconds}});
    }
    json wins = json::array();
    for (const auto& w : report.wins) {
        wins.push_back(json{{"a", colsel::to_string(w.a)}, {"b", colsel::to_string(w.b)},
                            {"a_wins", w.a_wins}, {"b_wins", w.b_wins}, {"ties", w.ties}});
    }
    return json{{"trials", report.trials}, {"stats", stats}, {"wins", wins}};
}

json trials_json(const std::vector<colsel::TrialResult>& trials) {
    json arr = json::array();
    for (const auto& t : trials) {
        json runs = json::array();
        for (const auto& r : t.runs) {
            runs.push_back(json{{"method", colsel::to_string(r.method)},
                                {"selected", r.selected},
                                {"bottom_sigmas", r.bottom_sigmas},
                                {"wall_seconds", r.wall_seconds}});
        }
        arr.push_back(json{{"trial", t.trial}, {"runs", runs}});
    }
    return arr;
}

std::string bound_trace_csv(const colsel::BoundTraceReport& report) {
    std::ostringstream out;
    out << "s,exact,eta,cor34,gershgorin\n";
    for (const auto& row : report.rows) {
        out << row.s << ',' << colsel::format_double(row.exact) << ','
            << colsel::format_double(row.eta) << ',' << colsel::format_double(row.batch) << ','
            << colsel::format_double(row.gershgorin) << '\n';
    }
    return out.str();
}

// Resolves "--start random|IDX" to an optional explicit column.
std::optional<std::size_t> parse_start(const std::string& start) {
    if (start == "random") return std::nullopt;
    std::size_t value = 0;
    const char* first = start.data();
    const char* last = start.data() + start.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        colsel::fail("UsageError", "--start expects 'random' or a column index, got '" + start + "'");
    }
    return value;
}

std::vector<colsel::Method> parse_methods(const std::string& list) {
    std::vector<colsel::Method> methods;
    std::size_t begin = 0;
    while (begin <= list.size()) {
        const std::size_t comma = list.find(',', begin);
        const std::string token =
            list.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        colsel::Method m;
        if (!colsel::method_from_string(token, m)) {
            colsel::fail("UsageError", "unknown method '" + token + "'");
        }
        methods.push_back(m);
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return methods;
}

struct CommandState {
    // coherence / select inputs
    InputFlags input;

    // select
    double epsilon = 0.5;
    std::string seed_text;  // empty = draw one
    std::string start = "random";
    std::string mode = "exact";
    std::size_t max_cols = 0;
    bool parallel_scan = false;
    std::string report_path;
    std::string trace_path;

    // bound
    double lambda = 1.0;
    double w = 0.0;
    double mu = 0.0;
    double alpha = 1.0;
    std::size_t s0 = 1;
    std::size_t s1 = 0;
    std::size_t s = 1;

    // simulate / trace
    std::size_t rows = 100;
    std::size_t cols = 1000;
    std::size_t trials = 20;
    std::size_t k = 10;
    std::size_t bottom_m = 5;
    std::string methods = "greedy-exact,random";
    std::size_t steps = 10;
    std::string out_path;
};

std::uint64_t resolve_seed(const std::string& seed_text) {
    if (seed_text.empty()) return draw_seed();
    std::uint64_t value = 0;
    const char* first = seed_text.data();
    const char* last = seed_text.data() + seed_text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        colsel::fail("UsageError", "--seed expects an unsigned 64-bit integer, got '" + seed_text + "'");
    }
    return value;
}

int run_coherence(const CommandState& st) {
    const colsel::ColumnMatrix x = load_input(st.input);
    std::cout << colsel::format_double(colsel::coherence(x)) << "\n";
    return 0;
}

int run_select(const CommandState& st) {
    const colsel::ColumnMatrix x = load_input(st.input);
    colsel::SelectionConfig cfg;
    cfg.epsilon = st.epsilon;
    cfg.max_cols = st.max_cols;
    cfg.seed = resolve_seed(st.seed_text);
    cfg.start = parse_start(st.start);
    cfg.mode = st.mode == "certificate" ? colsel::SelectionMode::certificate
                                        : colsel::SelectionMode::exact;
    cfg.parallel_scan = st.parallel_scan;

    const colsel::SelectionTrace trace = colsel::greedy_select(x, cfg);

    json config = input_config(st.input);
    config["epsilon"] = cfg.epsilon;
    config["seed"] = cfg.seed;
    config["start"] = st.start;
    config["mode"] = colsel::to_string(cfg.mode);
    config["max_cols"] = cfg.max_cols;
    config["parallel_scan"] = cfg.parallel_scan;

    const json doc = report_envelope("select", config, selection_results_json(trace));
    emit_report(doc, st.report_path);
    if (!st.trace_path.empty()) write_text(st.trace_path, selection_trace_csv(trace));
    return 0;
}

int run_bound_one(const CommandState& st) {
    const colsel::AppendBound b = colsel::bound_append_minform(st.lambda, st.w);
    const json results{{"lambda", b.lambda_prev}, {"w", b.gram_norm},
                       {"sharp", b.sharp_bound}, {"minform", b.minform_bound},
                       {"vacuous", b.vacuous}};
    const json config{{"lambda", st.lambda}, {"w", st.w}};
    emit_report(report_envelope("bound one", config, results), st.report_path);
    return 0;
}

int run_bound_batch(const CommandState& st) {
    colsel::BatchBoundParams params;
    params.mu = st.mu;
    params.alpha = st.alpha;
    params.s0 = st.s0;
    params.s1 = st.s1;
    params.lambda_s0 = st.lambda;

    const colsel::EpsMinBranches branches = colsel::eps_min_branches(params);
    const double eps = colsel::eps_min(params);
    const double bound = params.lambda_s0 - eps;
    const colsel::SuccessiveBoundTrace rec = colsel::bound_successive_recursion(params);

    json recursion{{"lambda_min_seq", rec.lambda_min_seq},
                   {"per_step_decrement", rec.per_step_decrement},
                   {"eps_min_closed", rec.eps_min_closed},
                   {"truncated", rec.truncated}};
    json mono = json::array();
    for (bool ok : rec.monotonicity_ok) mono.push_back(ok);
    recursion["monotonicity_ok"] = mono;

    const json results{{"eps_min", eps},
                       {"sqrt_branch", branches.sqrt_branch},
                       {"ratio_branch", std::isfinite(branches.ratio_branch)
                                            ? json(branches.ratio_branch)
                                            : json("inf")},
                       {"bound", std::max(0.0, bound)},
                       {"vacuous", bound <= 0.0},
                       {"recursion", recursion}};
    const json config{{"mu", st.mu}, {"alpha", st.alpha}, {"s0", st.s0},
                      {"s1", st.s1}, {"lambda", st.lambda}};
    emit_report(report_envelope("bound batch", config, results), st.report_path);
    return 0;
}

int run_bound_gershgorin(const CommandState& st) {
    const double bound = colsel::gershgorin_lower_bound(st.mu, st.s);
    const json results{{"mu", st.mu}, {"s", st.s}, {"bound", bound}};
    const json config{{"mu", st.mu}, {"s", st.s}};
    emit_report(report_envelope("bound gershgorin", config, results), st.report_path);
    return 0;
}

int run_simulate(const CommandState& st) {
    colsel::EnsembleSpec spec;
    spec.rows = st.rows;
    spec.cols = st.cols;
    spec.trials = st.trials;
    spec.seed = resolve_seed(st.seed_text);
    spec.k = st.k;
    spec.epsilon = st.epsilon;
    spec.methods = parse_methods(st.methods);
    spec.bottom_m = st.bottom_m;

    const std::vector<colsel::TrialResult> results = colsel::run_trials(spec);
    const colsel::CompareReport summary = colsel::summarize(results);

    json method_names = json::array();
    for (auto m : spec.methods) method_names.push_back(colsel::to_string(m));
    const json config{{"rows", spec.rows}, {"cols", spec.cols}, {"trials", spec.trials},
                      {"seed", spec.seed}, {"k", spec.k}, {"epsilon", spec.epsilon},
                      {"methods", method_names}, {"bottom_m", spec.bottom_m}};
    const json doc = report_envelope(
        "simulate", config,
        json{{"trials", trials_json(results)}, {"summary", compare_report_json(summary)}});
    emit_report(doc, st.report_path);
    return 0;
}

int run_trace(const CommandState& st) {
    const std::uint64_t seed = resolve_seed(st.seed_text);
    const colsel::ColumnMatrix x = colsel::gen_gaussian(st.rows, st.cols, seed);
    colsel::SelectionConfig cfg;
    cfg.epsilon = st.epsilon;
    cfg.max_cols = st.steps;
    cfg.seed = colsel::derive_seed(seed, 1);
    const colsel::BoundTraceReport report = colsel::bound_trace(x, cfg);

    write_text(st.out_path, bound_trace_csv(report));
    const json summary{{"rows_written", report.rows.size()}, {"mu", report.mu},
                       {"batch_quarantined", report.batch_quarantined}, {"seed", seed},
                       {"out", st.out_path}};
    std::cout << summary.dump() << "\n";
    return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"column subset selection with certified smallest-singular-value bounds"};
    app.require_subcommand(1);
    CommandState st;

    CLI::App* coherence = app.add_subcommand("coherence", "print the coherence of a CSV matrix");
    add_input_flags(coherence, st.input);

    CLI::App* select = app.add_subcommand("select", "greedy column selection with eta certificate");
    add_input_flags(select, st.input);
    select->add_option("--epsilon", st.epsilon, "stop once eta < 1 - epsilon (default 0.5)");
    select->add_option("--seed", st.seed_text, "64-bit seed; drawn and echoed when absent");
    select->add_option("--start", st.start, "'random' or an explicit 0-based column index");
    select->add_option("--mode", st.mode, "exact | certificate")
        ->check(CLI::IsMember({"exact", "certificate"}));
    select->add_option("--max-cols", st.max_cols, "cap on selected columns; 0 = min(rows, cols)");
    select->add_flag("--parallel-scan", st.parallel_scan, "scan candidates on multiple threads");
    select->add_option("--report", st.report_path, "write the JSON report here (default: stdout)");
    select->add_option("--trace", st.trace_path, "write the per-step CSV here");

    CLI::App* bound = app.add_subcommand("bound", "evaluate the append bounds");
    bound->require_subcommand(1);
    CLI::App* bound_one = bound->add_subcommand("one", "single-append bound from lambda and w");
    bound_one->add_option("--lambda", st.lambda, "smallest nonzero eigenvalue before the append")
        ->required();
    bound_one->add_option("--w", st.w, "cross-Gram norm ||X_T^t X_j||_2")->required();
    bound_one->add_option("--report", st.report_path, "write the JSON report here");

    CLI::App* bound_batch = bound->add_subcommand("batch", "multi-append cap and recursion");
    bound_batch->add_option("--mu", st.mu, "coherence")->required();
    bound_batch->add_option("--alpha", st.alpha, "submatrix coherence advantage in [0, 1]")->required();
    bound_batch->add_option("--s0", st.s0, "current number of columns")->required();
    bound_batch->add_option("--s1", st.s1, "columns to append")->required();
    bound_batch->add_option("--lambda", st.lambda, "smallest nonzero eigenvalue at size s0")->required();
    bound_batch->add_option("--report", st.report_path, "write the JSON report here");

    CLI::App* bound_gersh = bound->add_subcommand("gershgorin", "Gershgorin disc bound");
    bound_gersh->add_option("--mu", st.mu, "submatrix coherence")->required();
    bound_gersh->add_option("--s", st.s, "number of columns")->required();
    bound_gersh->add_option("--report", st.report_path, "write the JSON report here");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo method comparison on Gaussian matrices");
    simulate->add_option("--rows", st.rows, "matrix rows (default 100)");
    simulate->add_option("--cols", st.cols, "matrix columns (default 1000)");
    simulate->add_option("--trials", st.trials, "number of trials (default 20)");
    simulate->add_option("--k", st.k, "columns to select per method (default 10)");
    simulate->add_option("--seed", st.seed_text, "64-bit master seed; drawn and echoed when absent");
    simulate->add_option("--methods", st.methods,
                         "comma list of greedy-exact, greedy-certificate, random, leverage");
    simulate->add_option("--epsilon", st.epsilon, "greedy stopping threshold (default 0.5)");
    simulate->add_option("--bottom-m", st.bottom_m, "smallest singular values kept per run (default 5)");
    simulate->add_option("--report", st.report_path, "write the JSON report here (default: stdout)");

    CLI::App* trace = app.add_subcommand("trace", "bound-versus-truth curves on a Gaussian matrix");
    trace->add_option("--rows", st.rows, "matrix rows")->required();
    trace->add_option("--cols", st.cols, "matrix columns")->required();
    trace->add_option("--steps", st.steps, "columns to select")->required();
    trace->add_option("--seed", st.seed_text, "64-bit seed; drawn and echoed when absent");
    trace->add_option("--epsilon", st.epsilon, "greedy stopping threshold (default 0.5)");
    trace->add_option("--out", st.out_path, "CSV output path (columns s,exact,eta,cor34,gershgorin)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(coherence)) return run_coherence(st);
        if (app.got_subcommand(select)) return run_select(st);
        if (app.got_subcommand(bound)) {
            if (bound->got_subcommand(bound_one)) return run_bound_one(st);
            if (bound->got_subcommand(bound_batch)) return run_bound_batch(st);
            return run_bound_gershgorin(st);
        }
        if (app.got_subcommand(simulate)) return run_simulate(st);
        if (app.got_subcommand(trace)) return run_trace(st);
        std::cerr << json{{"error", "UsageError"}, {"message", "no subcommand"}}.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
        return e.code() == "UsageError" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}

int dispatch(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("colsel");
    for (const auto& a : args) argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace colsel_cli
