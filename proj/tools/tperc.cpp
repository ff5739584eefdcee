// tperc: command-line driver for the percolation campaigns, formulas, fits
// and self-checks. Tables go to stdout (or --out) as CSV; every invocation
// appends one run record to --record.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tperc/analysis.hpp"
#include "tperc/cft.hpp"
#include "tperc/errors.hpp"
#include "tperc/estimators.hpp"
#include "tperc/pool.hpp"
#include "tperc/records.hpp"
#include "tperc/verify.hpp"

namespace {

using namespace tperc;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRange = 3;
constexpr int kExitNumeric = 4;

// ---------------------------------------------------------------- config file

// Flat document: either a JSON object or key=value lines ('#' comments).
// List values are JSON arrays or comma-separated.
std::map<std::string, std::vector<std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::map<std::string, std::vector<std::string>> out;

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::exception& e) {
            throw ArgumentError("config " + path + ": " + e.what());
        }
        auto scalar = [&](const std::string& key, const Json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) return format_double(v.get<double>());
            throw ArgumentError("config " + path + ": key '" + key + "' must be a scalar or a flat list");
        };
        for (const auto& [key, v] : j.items()) {
            auto& vals = out[key];
            if (v.is_array())
                for (const auto& e : v) vals.push_back(scalar(key, e));
            else
                vals.push_back(scalar(key, v));
        }
        return out;
    }

    std::istringstream lines(text);
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(lines, line)) {
        ++number;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("config " + path + " line " + std::to_string(number) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        auto& vals = out[key];
        std::istringstream items(line.substr(eq + 1));
        std::string item;
        while (std::getline(items, item, ',')) vals.push_back(trim(item));
    }
    return out;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Appends config entries as --key=value arguments for keys not already given,
// so flags win over the file and the file over defaults.
void apply_config(CLI::App& sub, std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return;
    for (const auto& [key, vals] : read_config(path)) {
        const std::string flag = "--" + key;
        if (key == "config" || sub.get_option_no_throw(flag) == nullptr)
            throw CLI::ConfigError("config " + path + ": unknown key '" + key + "' for " + sub.get_name());
        if (given_on_command_line(args, flag)) continue;
        for (const auto& v : vals) args.push_back(flag + "=" + v);
    }
}

// ---------------------------------------------------------------- shared options

struct Common {
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::uint64_t first_trial = 0;
    unsigned workers = 0;
    int truncation = 0;
    std::string record = "runs.jsonl";
    std::string out;
    std::string config;

    [[nodiscard]] RunOptions run_options() const {
        RunOptions o;
        o.master_seed = seed;
        o.trials = trials;
        o.first_trial = first_trial;
        o.workers = workers == 0 ? default_workers() : workers;
        o.truncation = truncation;
        return o;
    }
};

void add_output_options(CLI::App& sub, Common& c) {
    sub.add_option("--out", c.out, "CSV output file (default stdout)");
    sub.add_option("--record", c.record, "run-record file to append to, or 'none'")->capture_default_str();
    sub.add_option("--config", c.config, "flat key=value or JSON file of option defaults");
}

void add_campaign_options(CLI::App& sub, Common& c) {
    sub.add_option("--seed", c.seed, "master seed")->capture_default_str();
    sub.add_option("--trials", c.trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    sub.add_option("--first-trial", c.first_trial, "index of the first trial (for shards)")->capture_default_str();
    sub.add_option("--workers", c.workers, "worker threads (0: TPERC_WORKERS or the core count)")
        ->capture_default_str();
    sub.add_option("--truncation", c.truncation, "truncation radius (0: default for n)")->capture_default_str();
    add_output_options(sub, c);
}

DomainKind parse_plane(const std::string& s) {
    if (s == "half") return DomainKind::HalfPlane;
    if (s == "full") return DomainKind::FullPlane;
    throw ArgumentError("domain must be 'half' or 'full'");
}

ArmKind parse_arm(const std::string& s) {
    if (s == "one") return ArmKind::One;
    if (s == "three") return ArmKind::Three;
    throw ArgumentError("arm kind must be 'one' or 'three'");
}

// Table sink: stdout or a file, closed on scope exit.
class Table {
public:
    explicit Table(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ArgumentError("cannot open output file " + path);
        }
        csv_.emplace(path.empty() ? std::cout : file_);
    }
    CsvWriter& csv() { return *csv_; }

private:
    std::ofstream file_;
    std::optional<CsvWriter> csv_;
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::int64_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

void write_record(const Common& c, const std::string& command, const Json& params,
                  std::vector<Accumulator> accumulators, const std::string& started) {
    if (c.record == "none" || c.record.empty()) return;
    RunRecord r;
    if (!accumulators.empty()) r.trial_ranges.push_back({c.first_trial, c.first_trial + c.trials});
    r.command = command;
    r.params = params;
    r.accumulators = std::move(accumulators);
    r.started = started;
    r.finished = utc_timestamp();
    append_record(c.record, r);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    Common c;
    std::string observable = "count";
    std::string domain = "half";
    std::vector<int> ns{64};
    int k = 64;
    double eps = 1.0;
};

int run_simulate(const SimulateArgs& a) {
    const std::string started = utc_timestamp();
    const RunOptions o = a.c.run_options();
    Table t(a.c.out);
    auto& csv = t.csv();
    CampaignData data;
    if (a.observable == "count") {
        const auto est = estimate_segment_expectation(a.ns, parse_plane(a.domain), o);
        csv.row({"domain", "n", "truncation", "trials", "mean", "std_error"});
        for (std::size_t j = 0; j < est.ns.size(); ++j) {
            const auto& r = est.counts[j];
            csv.row({a.domain, fmt(est.ns[j]), fmt(r.truncation), fmt(r.trials), fmt(r.mean), fmt(r.std_error)});
        }
        data = est.data;
    } else if (a.observable == "leading") {
        const auto est = estimate_leading_constant(parse_plane(a.domain), o);
        csv.row({"domain", "truncation", "trials", "mean", "std_error"});
        csv.row({a.domain, fmt(est.value.truncation), fmt(est.value.trials), fmt(est.value.mean),
                 fmt(est.value.std_error)});
        data = est.data;
    } else if (a.observable == "wprime") {
        const auto est = estimate_wprime(a.k, a.eps, o);
        csv.row({"event", "k", "K", "eps", "truncation", "trials", "mean", "std_error"});
        for (const auto* r : {&est.W, &est.W_tilde, &est.W_prime, &est.W_and_W_tilde})
            csv.row({r->observable, fmt(est.k), fmt(est.K), fmt(est.eps), fmt(r->truncation), fmt(r->trials),
                     fmt(r->mean), fmt(r->std_error)});
        data = est.data;
    } else {
        throw ArgumentError("observable must be count, leading or wprime");
    }
    write_record(a.c, "simulate", data.params, data.accumulators, started);
    return 0;
}

// ---------------------------------------------------------------- windows

struct WindowsArgs {
    Common c;
    std::string domain = "half";
    int n = 1024;
    std::vector<double> eps{1.0};
    bool cut = false;
};

void grid_rows(CsvWriter& csv, const std::string& domain, const WindowGrid& g) {
    const auto& p = g.partition;
    auto put = [&](const EstimateReport& r, const std::string& quantity, const std::string& window,
                   const std::string& lo, const std::string& hi) {
        csv.row({domain, fmt(p.n), fmt(p.eps), fmt(g.truncation), fmt(r.trials), quantity, window, lo, hi,
                 fmt(r.mean), fmt(r.std_error)});
    };
    put(g.f0, "f0", "", "", "");
    put(g.ray_first, "ray_first", "", "", "");
    put(g.window_sum, "window_sum", "", "", "");
    put(g.L_hat, "L_hat", "", "", "");
    if (g.L_bound) put(*g.L_bound, "L_bound", "", "", "");
    for (const auto& w : g.rows) {
        const std::string i = fmt(w.window), lo = fmt(w.lo), hi = fmt(w.hi);
        put(w.T_over_eps, "T_over_eps", i, lo, hi);
        if (w.S) put(*w.S, "S", i, lo, hi);
        if (w.T_tilde_over_eps) put(*w.T_tilde_over_eps, "T_tilde_over_eps", i, lo, hi);
        if (w.B) put(*w.B, "B", i, lo, hi);
    }
}

int run_windows(const WindowsArgs& a) {
    const std::string started = utc_timestamp();
    const DomainKind kind = parse_plane(a.domain);
    if (a.cut && kind != DomainKind::FullPlane) throw ArgumentError("--cut needs --domain full");
    const auto set = estimate_window_grid(a.n, a.eps, kind, a.c.run_options(), GridOptions{a.cut});
    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"domain", "n", "eps", "truncation", "trials", "quantity", "window", "lo", "hi", "mean", "std_error"});
    for (const auto& g : set.grids) grid_rows(csv, a.domain, g);
    write_record(a.c, "windows", set.data.params, set.data.accumulators, started);
    return 0;
}

// ---------------------------------------------------------------- arm

struct ArmArgs {
    Common c;
    std::string kind = "three";
    int inner = 1;
    std::vector<int> outers;
    int ratio_k = 0;
};

int run_arm(const ArmArgs& a) {
    const std::string started = utc_timestamp();
    const ArmKind kind = parse_arm(a.kind);
    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"kind", "inner", "outer", "trials", "mean", "std_error"});
    CampaignData data;
    if (a.ratio_k > 0) {
        const auto est = estimate_arm_ratio(a.inner, a.ratio_k, kind, a.c.run_options());
        csv.row({a.kind, fmt(a.inner), fmt(est.k), fmt(est.at_k.trials), fmt(est.at_k.mean), fmt(est.at_k.std_error)});
        csv.row({a.kind, fmt(a.inner), fmt(2 * est.k), fmt(est.at_2k.trials), fmt(est.at_2k.mean),
                 fmt(est.at_2k.std_error)});
        csv.row({a.kind, fmt(a.inner), fmt(2 * est.k) + "/" + fmt(est.k), fmt(est.at_k.trials), fmt(est.ratio),
                 fmt(est.ratio_std_error)});
        data = est.data;
    } else {
        if (a.outers.empty()) throw ArgumentError("arm: give --outer radii or --ratio k");
        const auto est = estimate_arm(a.inner, a.outers, kind, a.c.run_options());
        for (std::size_t j = 0; j < est.outers.size(); ++j) {
            const auto& r = est.probability[j];
            csv.row({a.kind, fmt(a.inner), fmt(est.outers[j]), fmt(r.trials), fmt(r.mean), fmt(r.std_error)});
        }
        data = est.data;
    }
    write_record(a.c, "arm", data.params, data.accumulators, started);
    return 0;
}

// ---------------------------------------------------------------- formula

struct FormulaArgs {
    Common c;
    std::string op;
    std::vector<double> args;  // --lambda / --eps / --x all land here
    double hyp_a = 0.0, hyp_b = 0.0, hyp_c = 1.0;
    double lambda_cap = cft::SeriesOptions{}.x_max;
    std::optional<double> from, to;
    int steps = 0;
};

int run_formula(const FormulaArgs& a) {
    const std::string started = utc_timestamp();
    cft::SeriesOptions so;
    so.x_max = a.lambda_cap;
    std::vector<double> xs = a.args;
    if (a.steps > 0) {
        if (!a.from || !a.to) throw ArgumentError("formula: --steps needs --from and --to");
        for (int j = 0; j <= a.steps; ++j) xs.push_back(*a.from + (*a.to - *a.from) * j / a.steps);
    }
    if (xs.empty()) throw ArgumentError("formula: no argument given");

    auto eval = [&](double x) -> cft::FormulaValue {
        if (a.op == "cardy") return cft::cardy(x, so);
        if (a.op == "watts") return cft::watts(x, so);
        if (a.op == "crossing-clusters") return cft::expected_crossing_clusters(x, so);
        if (a.op == "crossing-excess") return cft::crossing_clusters_excess(x, so);
        if (a.op == "hyp2f1") return cft::hyp2f1(a.hyp_a, a.hyp_b, a.hyp_c, x, so);
        if (a.op == "hyp3f2") return cft::hyp3f2_special(x, so);
        if (a.op == "gamma") return {cft::gamma_fn(x), 0.0};
        if (a.op == "cut-lambda") return {cft::cut_plane_lambda(x).lambda, 0.0};
        if (a.op == "wprime-limit") return cft::halfplane_wprime_limit(x, so);
        if (a.op == "wprime-linear") return {cft::halfplane_wprime_linear(x), 0.0};
        if (a.op == "cut-prediction") return cft::cut_plane_window_prediction(x, so);
        throw ArgumentError("formula: unknown op '" + a.op + "'");
    };

    // Evaluate everything before printing so a range error leaves no partial table.
    std::vector<cft::FormulaValue> values;
    for (const double x : xs) values.push_back(eval(x));
    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"op", "argument", "value", "abs_error_bound"});
    for (std::size_t j = 0; j < xs.size(); ++j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", values[j].value);
        csv.row({a.op, fmt(xs[j]), buf, fmt(values[j].abs_error_bound)});
    }
    Json params = {{"family", "formula"}, {"op", a.op}, {"arguments", xs}, {"x_max", a.lambda_cap}};
    if (a.op == "hyp2f1") params["abc"] = {a.hyp_a, a.hyp_b, a.hyp_c};
    write_record(a.c, "formula", params, {}, started);
    return 0;
}

// ---------------------------------------------------------------- records in

std::vector<RunRecord> merged_family(const std::string& path, const std::string& family) {
    const auto all = read_records(path);
    std::vector<RunRecord> picked;
    for (const auto& r : all)
        if (r.params.value("family", "") == family) picked.push_back(r);
    return merge_records(picked);
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    Common c;
    std::string from = "runs.jsonl";
    std::string points;
    std::string domain = "half";
    std::string model = "n-log";
};

std::vector<FitPoint> points_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    std::vector<FitPoint> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "n,mean,std_error") throw ArgumentError(path + ": header must be n,mean,std_error");
            continue;
        }
        FitPoint p;
        char c1 = 0, c2 = 0;
        std::istringstream row(line);
        if (!(row >> p.n >> c1 >> p.mean >> c2 >> p.std_error) || c1 != ',' || c2 != ',')
            throw ArgumentError(path + ": bad row '" + line + "'");
        out.push_back(p);
    }
    return out;
}

// Segment-count means per n, pooled over every matching campaign.
std::vector<FitPoint> points_from_records(const std::string& path, DomainKind kind) {
    std::map<int, Accumulator> by_n;
    for (const auto& r : merged_family(path, "segment")) {
        if (r.params.value("domain", "") != to_string(kind)) continue;
        for (const auto& acc : r.accumulators) {
            const int n = std::stoi(acc.observable().substr(acc.observable().find('=') + 1));
            auto copy = Accumulator::from_fields(acc.observable(), "pooled", acc.trials(), acc.sum(), acc.sum_sq());
            auto [it, fresh] = by_n.try_emplace(n, copy);
            if (!fresh) it->second.merge(copy);
        }
    }
    std::vector<FitPoint> out;
    for (const auto& [n, acc] : by_n) out.push_back({static_cast<double>(n), acc.mean(), acc.std_error()});
    return out;
}

int run_fit(const FitArgs& a) {
    const std::string started = utc_timestamp();
    const auto pts = a.points.empty() ? points_from_records(a.from, parse_plane(a.domain)) : points_from_csv(a.points);
    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"parameter", "value", "std_error"});
    if (a.model == "n-log") {
        const auto f = fit_n_log(pts);
        csv.row({"A", fmt(f.A), fmt(f.se(0))});
        csv.row({"B", fmt(f.B), fmt(f.se(1))});
        csv.row({"C", fmt(f.C), fmt(f.se(2))});
        csv.row({"residual_norm", fmt(f.residual_norm), ""});
        csv.row({"dof", fmt(f.dof), ""});
    } else if (a.model == "log") {
        const auto f = fit_log(pts);
        csv.row({"B", fmt(f.B), fmt(f.se_B())});
        csv.row({"C", fmt(f.C), fmt(f.se_C())});
        csv.row({"residual_norm", fmt(f.residual_norm), ""});
        csv.row({"dof", fmt(f.dof), ""});
    } else {
        throw ArgumentError("fit: model must be n-log or log");
    }
    Json pj = Json::array();
    for (const auto& p : pts) pj.push_back({p.n, p.mean, p.std_error});
    write_record(a.c, "fit", {{"family", "fit"}, {"model", a.model}, {"points", pj}}, {}, started);
    return 0;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
    Common c;
    std::string from = "runs.jsonl";
    std::string domain = "half";
    std::string summary;
};

int run_report(const ReportArgs& a) {
    const std::string started = utc_timestamp();
    const DomainKind kind = parse_plane(a.domain);
    std::vector<WindowGrid> grids;
    for (const auto& r : merged_family(a.from, "windows")) {
        if (r.params.value("domain", "") != to_string(kind)) continue;
        auto g = assemble_window_grids(CampaignData{r.params, r.accumulators});
        grids.insert(grids.end(), g.begin(), g.end());
    }
    if (grids.empty()) throw ArgumentError("report: no window campaigns for domain " + a.domain + " in " + a.from);

    // Per (n, eps) the smallest truncation is reported; a grid at twice that
    // truncation only supplies doubling deltas.
    std::map<std::pair<int, double>, std::map<int, const WindowGrid*>> by_key;
    for (const auto& g : grids) by_key[{g.partition.n, g.partition.eps}][g.truncation] = &g;
    std::vector<WindowGrid> base;
    for (const auto& [key, by_trunc] : by_key) {
        WindowGrid g = *by_trunc.begin()->second;
        const auto doubled = by_trunc.find(2 * g.truncation);
        if (doubled != by_trunc.end()) {
            const WindowGrid& d = *doubled->second;
            for (auto [x, y] : {std::pair{&g.L_hat, &d.L_hat}, std::pair{&g.ray_first, &d.ray_first},
                                std::pair{&g.f0, &d.f0}, std::pair{&g.window_sum, &d.window_sum}})
                x->doubled_delta = y->mean - x->mean;
            if (g.L_bound && d.L_bound) g.L_bound->doubled_delta = d.L_bound->mean - g.L_bound->mean;
        }
        base.push_back(std::move(g));
    }
    const auto rep = prefactor_report(base);

    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"section", "n", "eps", "truncation", "window", "lo", "hi", "quantity", "mean", "std_error", "prediction",
             "doubled_delta"});
    auto put = [&](const std::string& section, int n, double eps, int trunc, const EstimateReport& r,
                   const std::string& quantity, const std::string& prediction) {
        csv.row({section, fmt(n), fmt(eps), fmt(trunc), "", "", "", quantity, fmt(r.mean), fmt(r.std_error), prediction,
                 fmt(r.doubled_delta)});
    };
    const std::string ref = fmt(rep.reference);
    for (const auto& row : rep.rows) {
        put("L", row.n, row.eps, row.truncation, row.L_hat, "L_hat",
            kind == DomainKind::HalfPlane ? ref : fmt(rep.conjecture));
        put("L", row.n, row.eps, row.truncation, row.L_windows, "L_windows", "");
        put("L", row.n, row.eps, row.truncation, row.f0_share, "f0_share", "");
        if (row.L_bound) put("L", row.n, row.eps, row.truncation, *row.L_bound, "L_bound", ref);
    }
    for (const auto& w : rep.windows) {
        csv.row({"window", fmt(w.n), fmt(w.eps), fmt(w.value.truncation), fmt(w.window), fmt(w.lo), fmt(w.hi),
                 w.cut ? "T_tilde_over_eps" : "T_over_eps", fmt(w.value.mean), fmt(w.value.std_error),
                 fmt(w.prediction), ""});
        if (w.B)
            csv.row({"window", fmt(w.n), fmt(w.eps), fmt(w.B->truncation), fmt(w.window), fmt(w.lo), fmt(w.hi), "B",
                     fmt(w.B->mean), fmt(w.B->std_error), "", ""});
    }
    auto extrap = [&](const std::string& quantity, const auto& list) {
        for (const auto& [n, e] : list)
            csv.row({"eps_to_zero", fmt(n), "0", "", "", "", "", quantity, fmt(e.value), fmt(e.std_error), ref, ""});
    };
    extrap("L_hat", rep.eps_extrapolated);
    extrap("L_bound", rep.eps_extrapolated_bound);
    if (rep.n_fit) {
        csv.row({"n_fit", "", "", "", "", "", "", "B", fmt(rep.n_fit->B), fmt(rep.n_fit->se_B()), ref, ""});
        csv.row({"n_fit", "", "", "", "", "", "", "C", fmt(rep.n_fit->C), fmt(rep.n_fit->se_C()), "", ""});
    }
    csv.row({"extrapolated", "", "", "", "", "", "", "L", fmt(rep.extrapolated), fmt(rep.extrapolated_std_error), ref,
             ""});

    if (!a.summary.empty()) {
        std::ofstream js(a.summary, std::ios::trunc);
        if (!js) throw ArgumentError("cannot open " + a.summary);
        js << to_json(rep).dump(2) << '\n';
    }
    write_record(a.c, "report", {{"family", "report"}, {"from", a.from}, {"domain", a.domain}}, {}, started);
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    Common c;
    std::string suite = "all";
    std::uint64_t samples = 10000;
    std::uint64_t mc_trials = 100000;
};

int run_verify(const VerifyArgs& a) {
    const std::string started = utc_timestamp();
    SuiteOptions so;
    so.master_seed = a.c.seed;
    so.samples = a.samples;
    so.mc_trials = a.mc_trials;
    so.workers = a.c.workers == 0 ? default_workers() : a.c.workers;
    std::vector<std::pair<std::string, CheckResult>> results;
    if (a.suite == "enumeration" || a.suite == "all")
        for (auto& r : verify_enumeration(so)) results.emplace_back("enumeration", std::move(r));
    if (a.suite == "identities" || a.suite == "all")
        for (auto& r : verify_identities(so)) results.emplace_back("identities", std::move(r));
    if (results.empty()) throw ArgumentError("verify: suite must be enumeration, identities or all");

    Table t(a.c.out);
    auto& csv = t.csv();
    csv.row({"suite", "check", "pass", "detail"});
    bool ok = true;
    for (const auto& [suite, r] : results) {
        csv.row({suite, r.name, r.pass ? "true" : "false", r.detail});
        ok = ok && r.pass;
    }
    write_record(a.c, "verify",
                 {{"family", "verify"}, {"suite", a.suite}, {"samples", a.samples}, {"mc_trials", a.mc_trials},
                  {"master_seed", a.c.seed}, {"passed", ok}},
                 {}, started);
    return ok ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"Critical site percolation on the triangular lattice: segment cluster counts, window "
                 "decompositions, arm events, crossing formulas."};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s_sim = app.add_subcommand("simulate", "Monte Carlo segment expectation, leading constant or W' event");
    s_sim->add_option("--observable", sim.observable, "count | leading | wprime")->capture_default_str();
    s_sim->add_option("--domain", sim.domain, "half | full")->capture_default_str();
    s_sim->add_option("--n", sim.ns, "segment lengths (count)")->delimiter(',')->capture_default_str();
    s_sim->add_option("--k", sim.k, "crossing scale (wprime)")->capture_default_str();
    s_sim->add_option("--eps", sim.eps, "window width (wprime)")->capture_default_str();
    add_campaign_options(*s_sim, sim.c);

    WindowsArgs win;
    auto* s_win = app.add_subcommand("windows", "T(i) grid, and with --cut S(i), T~(i), B(i) in the full plane");
    s_win->add_option("--domain", win.domain, "half | full")->capture_default_str();
    s_win->add_option("--n", win.n, "segment length")->capture_default_str();
    s_win->add_option("--eps", win.eps, "window widths")->delimiter(',')->capture_default_str();
    s_win->add_flag("--cut", win.cut, "full plane: add the cut-plane pipeline");
    add_campaign_options(*s_win, win.c);

    ArmArgs arm;
    auto* s_arm = app.add_subcommand("arm", "one- and three-arm probabilities");
    s_arm->add_option("--kind", arm.kind, "one | three")->capture_default_str();
    s_arm->add_option("--inner", arm.inner, "inner radius")->capture_default_str();
    s_arm->add_option("--outer", arm.outers, "outer radii")->delimiter(',');
    s_arm->add_option("--ratio", arm.ratio_k, "estimate pi(inner,2k)/pi(inner,k) for this k");
    add_campaign_options(*s_arm, arm.c);

    FormulaArgs fm;
    auto* s_fm = app.add_subcommand("formula", "evaluate a crossing formula on arguments or a grid");
    s_fm->add_option("--op", fm.op,
                     "cardy | watts | crossing-clusters | crossing-excess | hyp2f1 | hyp3f2 | gamma | cut-lambda | "
                     "wprime-limit | wprime-linear | cut-prediction")
        ->required();
    s_fm->add_option("--lambda,--eps,--x", fm.args, "arguments")->delimiter(',');
    s_fm->add_option("--a", fm.hyp_a, "hyp2f1 a");
    s_fm->add_option("--b", fm.hyp_b, "hyp2f1 b");
    s_fm->add_option("--c", fm.hyp_c, "hyp2f1 c");
    s_fm->add_option("--lambda-cap", fm.lambda_cap, "largest series argument accepted")->capture_default_str();
    s_fm->add_option("--from", fm.from, "grid start");
    s_fm->add_option("--to", fm.to, "grid end");
    s_fm->add_option("--steps", fm.steps, "grid intervals")->check(CLI::NonNegativeNumber);
    add_output_options(*s_fm, fm.c);

    FitArgs fit;
    auto* s_fit = app.add_subcommand("fit", "weighted fit of segment expectations in n");
    s_fit->add_option("--from", fit.from, "run records holding simulate campaigns")->capture_default_str();
    s_fit->add_option("--points", fit.points, "CSV with header n,mean,std_error instead of records");
    s_fit->add_option("--domain", fit.domain, "half | full")->capture_default_str();
    s_fit->add_option("--model", fit.model, "n-log (A n + B log n + C) | log (B log n + C)")->capture_default_str();
    add_output_options(*s_fit, fit.c);

    ReportArgs rep;
    auto* s_rep = app.add_subcommand("report", "prefactor table from window campaigns in the run records");
    s_rep->add_option("--from", rep.from, "run records")->capture_default_str();
    s_rep->add_option("--domain", rep.domain, "half | full")->capture_default_str();
    s_rep->add_option("--summary", rep.summary, "also write a JSON summary here");
    add_output_options(*s_rep, rep.c);

    VerifyArgs ver;
    auto* s_ver = app.add_subcommand("verify", "enumeration-oracle and identity self-checks");
    s_ver->add_option("--suite", ver.suite, "enumeration | identities | all")->capture_default_str();
    s_ver->add_option("--samples", ver.samples, "samples per identity")->capture_default_str();
    s_ver->add_option("--mc-trials", ver.mc_trials, "Monte Carlo trials per toy domain")->capture_default_str();
    s_ver->add_option("--seed", ver.c.seed, "master seed")->capture_default_str();
    s_ver->add_option("--workers", ver.c.workers, "worker threads (0: TPERC_WORKERS or the core count)")
        ->capture_default_str();
    add_output_options(*s_ver, ver.c);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto sub_it = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a[0] != '-'; });
        if (sub_it != args.end())
            if (auto* sub = app.get_subcommand_no_throw(*sub_it)) {
                std::vector<std::string> rest(sub_it + 1, args.end());
                apply_config(*sub, rest);
                args.erase(sub_it + 1, args.end());
                args.insert(args.end(), rest.begin(), rest.end());
            }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (s_sim->parsed()) return run_simulate(sim);
    if (s_win->parsed()) return run_windows(win);
    if (s_arm->parsed()) return run_arm(arm);
    if (s_fm->parsed()) return run_formula(fm);
    if (s_fit->parsed()) return run_fit(fit);
    if (s_rep->parsed()) return run_report(rep);
    return run_verify(ver);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const RangeError& e) {
        std::cerr << "range error: " << e.what() << '\n';
        return kExitRange;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
