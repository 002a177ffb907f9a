#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "evsnn/builders.hpp"
#include "evsnn/engine.hpp"
#include "evsnn/events.hpp"
#include "evsnn/harness.hpp"
#include "evsnn/labels.hpp"
#include "evsnn/network.hpp"
#include "evsnn/oracle.hpp"
#include "evsnn/parallel.hpp"
#include "evsnn/render.hpp"
#include "evsnn/scenarios.hpp"
#include "evsnn/spike_io.hpp"

namespace evsnn::cli {

namespace {

/// Raised for unreadable/unwritable files and malformed inputs (exit 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for flag values outside their valid range (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("error writing " + path);
}

/// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << content;
    } else {
        write_file(path, content);
    }
}

std::vector<Event> load_events(const std::string& path, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    try {
        EventStream stream = read_events(in);
        if (stream.reordered) err << "warning: " << path << ": timestamps out of order; events were sorted\n";
        return std::move(stream.events);
    } catch (const EventParseError& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::vector<LabeledWindow> load_labels(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    try {
        return read_labels(in);
    } catch (const LabelParseError& e) {
        throw IoError(path + ": " + e.what());
    }
}

Extent parse_extent(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t used_w = 0, used_h = 0;
        const int w = std::stoi(text.substr(0, x), &used_w);
        const int h = std::stoi(text.substr(x + 1), &used_h);
        if (used_w != x || used_h != text.size() - x - 1 || w <= 0 || h <= 0) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::exception&) {
        throw UsageError("--extent expects WxH with positive integers, got '" + text + "'");
    }
}

SpeedVariant parse_variant(const std::string& text)
{
    if (text == "slow") return SpeedVariant::FilterSlow;
    if (text == "fast") return SpeedVariant::FilterFast;
    throw UsageError("--variant must be slow or fast");
}

template <typename Params>
void check(const Params& p)
{
    try {
        check_params(p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct StreamOptions {
    std::string events;
    std::string out;
    std::string render;
    std::string extent;
    int eps_speed = 1;
    int t = 9;
    std::string variant = "fast";
    int eps = 3;
    int min_points = 10;
    std::int64_t bin_us = 1000;
    std::int64_t window_us = 50000;
    unsigned threads = 1;

    SpeedFilterParams speed() const
    {
        SpeedFilterParams p{eps_speed, t, parse_variant(variant)};
        check(p);
        return p;
    }
    DbscanParams dbscan() const
    {
        DbscanParams p{eps, min_points};
        check(p);
        return p;
    }
    void check_timing() const
    {
        if (!extent.empty()) parse_extent(extent);
        if (bin_us <= 0) throw UsageError("--bin-us must be positive");
        if (window_us <= 0) throw UsageError("--window-us must be positive");
    }
};

void add_events_option(CLI::App* cmd, StreamOptions& o)
{
    cmd->add_option("--events", o.events, "Event CSV (t_us,x,y,p)")->required();
    cmd->add_option("-o,--out", o.out, "Output file (default: stdout)");
}

void add_speed_options(CLI::App* cmd, StreamOptions& o, const char* eps_flag)
{
    cmd->add_option(eps_flag, o.eps_speed, "Speed filter radius (Chebyshev)");
    cmd->add_option("--t", o.t, "Speed threshold t_s");
    cmd->add_option("--variant", o.variant, "slow: drop slow events; fast: drop fast events");
    cmd->add_option("--bin-us", o.bin_us, "Time bin width in microseconds");
}

void add_dbscan_options(CLI::App* cmd, StreamOptions& o)
{
    cmd->add_option("--eps", o.eps, "DBSCAN radius (Chebyshev)");
    cmd->add_option("--min-points", o.min_points, "DBSCAN min_points (self included)");
    cmd->add_option("--window-us", o.window_us, "Aggregation window in microseconds");
}

void add_output_options(CLI::App* cmd, StreamOptions& o, bool windowed = true)
{
    cmd->add_option("--render", o.render,
                    windowed ? "Write <prefix>_before_<k>.ppm and <prefix>_after_<k>.ppm per window"
                             : "Write <prefix>_before.ppm and <prefix>_after.ppm");
    cmd->add_option("--extent", o.extent, "Sensor extent WxH for rendering (default: from events)");
    cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
}

Extent resolve_extent(const StreamOptions& o, const std::vector<Event>& events)
{
    if (!o.extent.empty()) return parse_extent(o.extent);
    return extent_of(events);
}

void render_windows(const StreamOptions& o, const std::vector<Event>& events,
                    const std::vector<PipelineWindow>& windows)
{
    if (o.render.empty()) return;
    const Extent extent = resolve_extent(o, events);
    for (std::size_t k = 0; k < windows.size(); ++k) {
        std::ostringstream before, after;
        try {
            write_ppm(before, render(windows[k].input, {}, extent));
            PointSet labelled;
            {
                std::vector<Pixel> pts;
                for (const auto& [p, c] : windows[k].labels) pts.push_back(p);
                labelled = PointSet(std::move(pts));
            }
            write_ppm(after, render(labelled, windows[k].labels, extent));
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
        write_file(o.render + "_before_" + std::to_string(k) + ".ppm", before.str());
        write_file(o.render + "_after_" + std::to_string(k) + ".ppm", after.str());
    }
}

std::vector<LabeledWindow> labeled(const std::vector<PipelineWindow>& windows)
{
    std::vector<LabeledWindow> out;
    out.reserve(windows.size());
    for (const auto& w : windows) out.push_back(w.labeled());
    return out;
}

int cmd_build(const std::string& kind, int eps, int t, const std::string& variant, int min_points,
              const std::string& out_path, std::ostream& out)
{
    Network net;
    if (kind == "speed") {
        SpeedFilterParams p{eps, t, parse_variant(variant)};
        check(p);
        net = build_speed(p);
    } else if (kind == "dbscan") {
        DbscanParams p{eps, min_points};
        check(p);
        net = build_dbscan(p);
    } else {
        throw UsageError("network kind must be speed or dbscan");
    }
    emit(out_path, save_network(net), out);
    return kOk;
}

int cmd_sim(const std::string& network_path, const std::string& schedule_path, int cycles, bool table,
            const std::string& fires_path, const std::vector<std::string>& columns, std::ostream& out)
{
    if (cycles <= 0) throw UsageError("--cycles must be positive");
    Network net;
    try {
        net = load_network(read_file(network_path));
    } catch (const ParseError& e) {
        throw IoError(network_path + ": " + e.what());
    }
    if (auto violations = validate_network(net); !violations.empty()) {
        throw IoError(network_path + ": " + violations.front().detail);
    }
    SpikeSchedule schedule;
    {
        std::istringstream in(read_file(schedule_path));
        try {
            schedule = read_schedule(in);
        } catch (const ParseError& e) {
            throw IoError(schedule_path + ": " + e.what());
        }
    }
    FireRecord fires;
    try {
        fires = run(net, schedule, static_cast<Cycle>(cycles));
    } catch (const std::invalid_argument& e) {
        throw IoError(schedule_path + ": " + e.what());
    }

    std::ostringstream csv;
    write_fires(csv, fires);
    if (!fires_path.empty()) write_file(fires_path, csv.str());
    if (table) {
        try {
            out << format_spike_table(net, schedule, fires, static_cast<Cycle>(cycles), columns);
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    } else if (fires_path.empty()) {
        out << csv.str();
    }
    return kOk;
}

int cmd_filter(const StreamOptions& o, std::ostream& out, std::ostream& err)
{
    const SpeedFilterParams speed = o.speed();
    o.check_timing();
    const auto events = load_events(o.events, err);
    const auto keep = speed_keep_mask(events, speed, o.bin_us, o.threads);
    std::vector<Event> kept;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (keep[i]) kept.push_back(events[i]);
    }
    std::ostringstream csv;
    write_events(csv, kept);
    emit(o.out, csv.str(), out);

    if (!o.render.empty() && !events.empty()) {
        const Extent extent = resolve_extent(o, events);
        auto image_of = [&](const std::vector<Event>& evs) {
            std::vector<Pixel> pts;
            for (const auto& e : evs) pts.push_back(e.pixel());
            std::ostringstream ppm;
            try {
                write_ppm(ppm, render(PointSet(std::move(pts)), {}, extent));
            } catch (const std::out_of_range& e) {
                throw UsageError(e.what());
            }
            return ppm.str();
        };
        write_file(o.render + "_before.ppm", image_of(events));
        write_file(o.render + "_after.ppm", image_of(kept));
    }
    return kOk;
}

int cmd_classify(const StreamOptions& o, std::ostream& out, std::ostream& err)
{
    const DbscanParams dbscan = o.dbscan();
    o.check_timing();
    const auto events = load_events(o.events, err);
    const auto windows = classify_stream(events, dbscan, o.window_us, o.threads);
    emit(o.out, labels_to_string(labeled(windows)), out);
    render_windows(o, events, windows);
    return kOk;
}

int cmd_pipeline(const StreamOptions& o, std::ostream& out, std::ostream& err)
{
    PipelineConfig config{o.speed(), o.dbscan(), o.bin_us, o.window_us, o.threads};
    o.check_timing();
    const auto events = load_events(o.events, err);
    const auto windows = pipeline(events, config);
    emit(o.out, labels_to_string(labeled(windows)), out);
    render_windows(o, events, windows);
    return kOk;
}

int cmd_oracle(const std::string& stage, const StreamOptions& o, std::ostream& out, std::ostream& err)
{
    const DbscanParams dbscan = o.dbscan();
    o.check_timing();
    const auto events = load_events(o.events, err);
    std::vector<LabeledWindow> windows;
    if (stage == "classify") {
        windows = oracle::oracle_classify_stream(events, dbscan.epsilon, dbscan.min_points, o.window_us);
    } else {
        windows = oracle::oracle_pipeline(events, o.speed(), dbscan, o.bin_us, o.window_us);
    }
    emit(o.out, labels_to_string(windows), out);
    return kOk;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, std::ostream& out)
{
    const auto a = load_labels(a_path);
    const auto b = load_labels(b_path);
    oracle::MismatchReport report;
    try {
        report = oracle::compare_label_windows(a, b);
    } catch (const oracle::StructuralMismatch& e) {
        out << "structural mismatch: " << e.what() << '\n';
        return kMismatch;
    }
    if (report.empty()) {
        out << "identical\n";
        return kOk;
    }
    out << report.size() << " mismatching point(s)\n" << report.to_string();
    return kMismatch;
}

int cmd_bench(const StreamOptions& o, std::size_t synthetic, std::uint64_t seed, std::ostream& out,
              std::ostream& err)
{
    PipelineConfig config{o.speed(), o.dbscan(), o.bin_us, o.window_us, o.threads};
    o.check_timing();
    std::vector<Event> events;
    if (!o.events.empty()) {
        events = load_events(o.events, err);
    } else if (synthetic > 0) {
        SceneConfig scene;
        scene.seed = seed;
        // ~38 bar events per step with the default bar; size the run to overshoot, then trim.
        scene.duration_us = static_cast<std::int64_t>(synthetic / 30 + 1) * scene.us_per_pixel;
        scene.salt_events = synthetic / 20;
        events = make_scene(scene).events;
        if (events.size() > synthetic) events.resize(synthetic);
    }

    PipelineStats stats;
    const auto start = std::chrono::steady_clock::now();
    const auto windows = pipeline(events, config, &stats);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    PipelineConfig reference = config;
    reference.threads = 1;
    const bool identical = labels_to_string(labeled(pipeline(events, reference))) == labels_to_string(labeled(windows));

    out << "events: " << stats.events << '\n'
        << "speed runs: " << stats.speed_runs << '\n'
        << "dbscan runs: " << stats.dbscan_runs << '\n'
        << "cycles simulated: " << stats.cycles << '\n'
        << "threads: " << resolve_threads(config.threads) << '\n'
        << "seconds: " << seconds << '\n'
        << "events/s: " << (seconds > 0 ? static_cast<double>(stats.events) / seconds : 0.0) << '\n'
        << "identical to single-thread run: " << (identical ? "yes" : "no") << '\n';
    if (!o.out.empty()) write_file(o.out, labels_to_string(labeled(windows)));
    return identical ? kOk : kMismatch;
}

int cmd_tables(const std::string& only, std::ostream& out)
{
    bool found = false;
    for (const auto& t : table_scenarios()) {
        if (!only.empty() && t.name != only) continue;
        found = true;
        const FireRecord fires = run(t.network, t.schedule, t.cycles);
        out << t.name << ": " << t.title << '\n'
            << format_spike_table(t.network, t.schedule, fires, t.cycles, t.columns) << '\n';
    }
    if (!found) throw UsageError("no table named '" + only + "'");
    return kOk;
}

int cmd_synth(std::uint64_t seed, const std::string& extent, std::int64_t duration_us, std::size_t salt,
              const std::string& out_path, std::ostream& out)
{
    SceneConfig config;
    config.seed = seed;
    if (!extent.empty()) config.extent = parse_extent(extent);
    if (duration_us <= 0) throw UsageError("--duration-us must be positive");
    config.duration_us = duration_us;
    config.salt_events = salt;
    std::ostringstream csv;
    write_events(csv, make_scene(config).events);
    emit(out_path, csv.str(), out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spiking-network speed filter and DBSCAN for event-camera streams", "evsnn"};
    app.require_subcommand(1);

    // build
    std::string build_kind, build_variant = "slow", build_out;
    int build_eps = 1, build_t = 0, build_min_points = 3;
    auto* build = app.add_subcommand("build", "Emit a network as JSON");
    build->add_option("kind", build_kind, "speed | dbscan")->required();
    build->add_option("--eps", build_eps, "Radius (Chebyshev)");
    build->add_option("--t", build_t, "Speed threshold t_s");
    build->add_option("--variant", build_variant, "slow | fast");
    build->add_option("--min-points", build_min_points, "DBSCAN min_points");
    build->add_option("-o,--out", build_out, "Output file (default: stdout)");

    // sim
    std::string sim_network, sim_schedule, sim_fires;
    int sim_cycles = 0;
    bool sim_table = false;
    std::vector<std::string> sim_columns;
    auto* sim = app.add_subcommand("sim", "Simulate a network on a spike schedule");
    sim->add_option("--network", sim_network, "Network JSON")->required();
    sim->add_option("--schedule", sim_schedule, "Schedule CSV (cycle,neuron)")->required();
    sim->add_option("--cycles", sim_cycles, "Number of cycles to simulate")->required();
    sim->add_flag("--table", sim_table, "Print an ASCII spike table instead of CSV");
    sim->add_option("--fires", sim_fires, "Also write the fire CSV here");
    sim->add_option("--columns", sim_columns, "Neuron labels to show in the table")->delimiter(',');

    // filter / classify / pipeline
    StreamOptions filter_opts;
    filter_opts.t = 0;
    filter_opts.variant = "slow";
    auto* filter = app.add_subcommand("filter", "Speed-filter an event stream");
    add_events_option(filter, filter_opts);
    add_speed_options(filter, filter_opts, "--eps");
    add_output_options(filter, filter_opts, false);

    StreamOptions classify_opts;
    classify_opts.eps = 1;
    classify_opts.min_points = 3;
    auto* classify = app.add_subcommand("classify", "DBSCAN-classify each aggregation window");
    add_events_option(classify, classify_opts);
    add_dbscan_options(classify, classify_opts);
    add_output_options(classify, classify_opts);

    StreamOptions pipeline_opts;
    auto* pipe = app.add_subcommand("pipeline", "Speed filter, then DBSCAN, per window");
    add_events_option(pipe, pipeline_opts);
    add_speed_options(pipe, pipeline_opts, "--eps-s");
    add_dbscan_options(pipe, pipeline_opts);
    add_output_options(pipe, pipeline_opts);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference labels");
    oracle_cmd->require_subcommand(1);
    StreamOptions oracle_classify_opts = classify_opts;
    auto* oracle_classify = oracle_cmd->add_subcommand("classify", "Reference for `classify`");
    add_events_option(oracle_classify, oracle_classify_opts);
    add_dbscan_options(oracle_classify, oracle_classify_opts);
    StreamOptions oracle_pipeline_opts;
    auto* oracle_pipe = oracle_cmd->add_subcommand("pipeline", "Reference for `pipeline`");
    add_events_option(oracle_pipe, oracle_pipeline_opts);
    add_speed_options(oracle_pipe, oracle_pipeline_opts, "--eps-s");
    add_dbscan_options(oracle_pipe, oracle_pipeline_opts);

    // compare
    std::string compare_a, compare_b;
    auto* compare = app.add_subcommand("compare", "Diff two label files; exit 1 on any mismatch");
    compare->add_option("a", compare_a, "Label CSV")->required();
    compare->add_option("b", compare_b, "Label CSV")->required();

    // bench
    StreamOptions bench_opts;
    bench_opts.threads = 0;
    std::size_t bench_synthetic = 0;
    std::uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "Time the pipeline");
    bench->add_option("--events", bench_opts.events, "Event CSV");
    bench->add_option("--synthetic", bench_synthetic, "Generate this many synthetic events instead");
    bench->add_option("--seed", bench_seed, "Seed for --synthetic");
    bench->add_option("-o,--out", bench_opts.out, "Write labels here");
    bench->add_option("--threads", bench_opts.threads, "Worker threads (0: all cores)");
    add_speed_options(bench, bench_opts, "--eps-s");
    add_dbscan_options(bench, bench_opts);

    // tables
    std::string tables_only;
    auto* tables = app.add_subcommand("tables", "Print the worked example spike tables");
    tables->add_option("--name", tables_only, "Only this scenario (e.g. speed-slow-keep, dbscan-border-events)");

    // synth
    std::uint64_t synth_seed = 1;
    std::string synth_extent, synth_out;
    std::int64_t synth_duration = 50000;
    std::size_t synth_salt = 60;
    auto* synth = app.add_subcommand("synth", "Generate a moving-bar + salt-noise event stream");
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--extent", synth_extent, "Sensor extent WxH (default 96x64)");
    synth->add_option("--duration-us", synth_duration, "Stream length in microseconds");
    synth->add_option("--salt", synth_salt, "Number of salt-noise events");
    synth->add_option("-o,--out", synth_out, "Output file (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*build) return cmd_build(build_kind, build_eps, build_t, build_variant, build_min_points, build_out, out);
        if (*sim) return cmd_sim(sim_network, sim_schedule, sim_cycles, sim_table, sim_fires, sim_columns, out);
        if (*filter) return cmd_filter(filter_opts, out, err);
        if (*classify) return cmd_classify(classify_opts, out, err);
        if (*pipe) return cmd_pipeline(pipeline_opts, out, err);
        if (*oracle_classify) return cmd_oracle("classify", oracle_classify_opts, out, err);
        if (*oracle_pipe) return cmd_oracle("pipeline", oracle_pipeline_opts, out, err);
        if (*compare) return cmd_compare(compare_a, compare_b, out);
        if (*bench) return cmd_bench(bench_opts, bench_synthetic, bench_seed, out, err);
        if (*tables) return cmd_tables(tables_only, out);
        if (*synth) return cmd_synth(synth_seed, synth_extent, synth_duration, synth_salt, synth_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace evsnn::cli
