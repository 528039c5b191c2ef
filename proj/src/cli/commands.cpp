#include "tempcast/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "tempcast/backtest.hpp"
#include "tempcast/cli/manifest.hpp"
#include "tempcast/errors.hpp"
#include "tempcast/format.hpp"
#include "tempcast/ingest.hpp"
#include "tempcast/models.hpp"
#include "tempcast/optimizer.hpp"
#include "tempcast/series_io.hpp"

namespace tempcast::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

fs::path manifest_path_for(const fs::path& output) {
    fs::path p = output;
    p += ".manifest.json";
    return p;
}

std::optional<Date> parse_date_flag(const std::string& text, const char* flag) {
    if (text.empty()) return std::nullopt;
    auto d = parse_iso_date(text);
    if (!d) throw UsageError(std::string(flag) + " expects YYYY-MM-DD, got '" + text + "'");
    return d;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    return out;
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
    std::string input;
    std::string unit;
    std::string station;
    std::string from;
    std::string to;
    std::size_t max_gap = 7;
    bool fallback = false;
    std::string output;
};

void add_ingest(CLI::App& app, IngestOptions& o) {
    app.add_option("--input", o.input, "NOAA CDO daily-summaries CSV export")->required();
    app.add_option("--unit", o.unit, "Unit of the export's temperature columns")
        ->required()
        ->check(CLI::IsMember({"celsius", "fahrenheit", "tenths-celsius"}));
    app.add_option("--station", o.station, "Keep only rows for this station id");
    app.add_option("--from", o.from, "First date to keep (YYYY-MM-DD)");
    app.add_option("--to", o.to, "Last date to keep (YYYY-MM-DD)");
    app.add_option("--max-gap", o.max_gap, "Longest interior run of missing days to interpolate")
        ->capture_default_str();
    app.add_flag("--tmax-tmin-fallback", o.fallback, "Use (TMAX+TMIN)/2 where TAVG is missing");
    app.add_option("--output", o.output, "Clean series CSV to write")->required();
}

int run_ingest(const IngestOptions& o, std::ostream& out) {
    CleanConfig config;
    config.max_gap = o.max_gap;
    config.from = parse_date_flag(o.from, "--from");
    config.to = parse_date_flag(o.to, "--to");
    if (!o.station.empty()) config.station = o.station;
    config.tmax_tmin_fallback = o.fallback;
    const TemperatureUnit unit = *parse_unit(o.unit);

    const std::string text = read_file(o.input);
    CleanResult cleaned;
    try {
        cleaned = clean_records(parse_cdo_csv(text, unit), config);
    } catch (const Error& e) {
        throw Error(e.code(), o.input + ": " + e.what());
    }

    const fs::path output(o.output);
    write_file(output, write_series_csv(cleaned.series));

    RunManifest manifest;
    manifest.command = "ingest";
    manifest.input_path = o.input;
    manifest.input_sha256 = sha256_hex(text);
    manifest.config = {{"unit", o.unit},
                       {"station", o.station},
                       {"from", o.from},
                       {"to", o.to},
                       {"max_gap", o.max_gap},
                       {"tmax_tmin_fallback", o.fallback}};
    manifest.artifacts = {output.filename().string()};
    manifest.rerun_args = {"ingest", "--input", o.input, "--unit", o.unit, "--max-gap", std::to_string(o.max_gap)};
    if (!o.station.empty()) manifest.rerun_args.insert(manifest.rerun_args.end(), {"--station", o.station});
    if (!o.from.empty()) manifest.rerun_args.insert(manifest.rerun_args.end(), {"--from", o.from});
    if (!o.to.empty()) manifest.rerun_args.insert(manifest.rerun_args.end(), {"--to", o.to});
    if (o.fallback) manifest.rerun_args.push_back("--tmax-tmin-fallback");
    write_manifest(manifest_path_for(output), manifest);

    const auto& s = cleaned.series;
    out << "raw rows:          " << cleaned.raw_rows << '\n'
        << "rows after filter: " << cleaned.filtered_rows << '\n'
        << "interpolated days: " << cleaned.interpolated << '\n'
        << "leap days dropped: " << cleaned.leap_days_dropped << '\n'
        << "trimmed days:      " << cleaned.trimmed << '\n';
    if (o.fallback) out << "tmax/tmin days:    " << cleaned.from_fallback << '\n';
    out << "rows written:      " << s.size() << " (" << format_iso_date(s.start_date()) << " .. "
        << format_iso_date(s.date_at(s.size() - 1)) << ")\n";
    return kExitOk;
}

// -------------------------------------------------------------- backtest

struct BacktestOptions {
    std::string series;
    std::size_t train_days = 1825;
    std::vector<int> leads{1, 2, 3, 4};
    std::size_t experiments = 50;
    unsigned long long seed = 0;
    std::vector<std::string> models{"proposed", "persistence", "average"};
    std::string grid = "default";
    std::size_t season = 365;
    std::size_t threads = 0;
    std::string out_dir;
};

void add_backtest(CLI::App& app, BacktestOptions& o) {
    app.add_option("--series", o.series, "Clean series CSV (from `ingest`)")->required();
    app.add_option("--train-days", o.train_days, "Training window length in days")->capture_default_str();
    app.add_option("--leads", o.leads, "Comma-separated lead times in days")->delimiter(',')->capture_default_str();
    app.add_option("--experiments", o.experiments, "Number of forecast origins")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed for origin sampling")->capture_default_str();
    app.add_option("--models", o.models, "Comma-separated subset of proposed,persistence,average")
        ->delimiter(',')
        ->check(CLI::IsMember({"proposed", "persistence", "average"}))
        ->capture_default_str();
    app.add_option("--grid", o.grid, "Parameter grid preset")
        ->check(CLI::IsMember({"coarse", "default", "fine"}))
        ->capture_default_str();
    app.add_option("--season", o.season, "Season length in days")->capture_default_str();
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores); does not affect results")
        ->capture_default_str();
    app.add_option("--out-dir", o.out_dir, "Directory for the report files")->required();
}

std::string rmse_table_csv(const BacktestReport& report) {
    std::string out = "lead";
    for (ModelKind m : report.config.models) {
        out += ',';
        out += to_string(m);
    }
    out += '\n';
    for (int lead : report.config.leads) {
        out += std::to_string(lead);
        for (ModelKind m : report.config.models) {
            out += ',';
            out += format_number(report.cell(m, lead).pooled_rmse);
        }
        out += '\n';
    }
    return out;
}

std::string experiment_errors_csv(const BacktestReport& report, const TimeSeries& series) {
    std::string out = "experiment,origin,last_train_date,alpha,beta,gamma,model,lead,error\n";
    const auto dates = series.dates();
    const auto& cfg = report.config;
    for (std::size_t e = 0; e < report.experiments.size(); ++e) {
        const auto& exp = report.experiments[e];
        std::string alpha, beta, gamma;
        if (exp.fit) {
            alpha = format_number(exp.fit->params.alpha);
            beta = format_number(exp.fit->params.beta);
            gamma = format_number(exp.fit->params.gamma);
        }
        for (std::size_t m = 0; m < cfg.models.size(); ++m) {
            const bool proposed = cfg.models[m] == ModelKind::Proposed;
            for (std::size_t l = 0; l < cfg.leads.size(); ++l) {
                out += std::to_string(e) + ',' + std::to_string(exp.origin) + ',' +
                       format_iso_date(dates[exp.origin - 1]) + ',';
                out += proposed ? alpha + ',' + beta + ',' + gamma : std::string(",,");
                out += ',';
                out += to_string(cfg.models[m]);
                out += ',' + std::to_string(cfg.leads[l]) + ',' + format_number(exp.errors[m][l]) + '\n';
            }
        }
    }
    return out;
}

void print_table(const BacktestReport& report, std::ostream& out) {
    out << "RMSE (K) over " << report.origins.size() << " experiments\n";
    out << std::left;
    out << "lead";
    for (ModelKind m : report.config.models) {
        std::string name(to_string(m));
        out << std::string(14 - std::min<std::size_t>(13, name.size()), ' ') << name;
    }
    out << '\n';
    for (int lead : report.config.leads) {
        std::string label = std::to_string(lead);
        out << label << std::string(4 - std::min<std::size_t>(3, label.size()), ' ');
        for (ModelKind m : report.config.models) {
            std::string v = format_fixed(report.cell(m, lead).pooled_rmse, 3);
            out << std::string(14 - std::min<std::size_t>(13, v.size()), ' ') << v;
        }
        out << '\n';
    }
}

int run_backtest_cmd(const BacktestOptions& o, std::ostream& out) {
    BacktestConfig config;
    config.train_length = o.train_days;
    config.leads = o.leads;
    config.n_experiments = o.experiments;
    config.seed = o.seed;
    config.models.clear();
    for (const auto& name : o.models) config.models.push_back(*parse_model(name));
    config.grid = grid_preset(o.grid);
    config.season_length = o.season;
    config.threads = o.threads;
    try {
        config.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    const std::string text = read_file(o.series);
    TimeSeries series;
    try {
        series = read_series_csv(text);
    } catch (const Error& e) {
        throw Error(e.code(), o.series + ": " + e.what());
    }
    const BacktestReport report = run_backtest(series, config);

    const fs::path dir(o.out_dir);
    fs::create_directories(dir);
    write_file(dir / "rmse_table.csv", rmse_table_csv(report));
    write_file(dir / "experiment_errors.csv", experiment_errors_csv(report, series));

    std::vector<std::string> lead_text;
    for (int l : o.leads) lead_text.push_back(std::to_string(l));
    RunManifest manifest;
    manifest.command = "backtest";
    manifest.input_path = o.series;
    manifest.input_sha256 = sha256_hex(text);
    manifest.seed = o.seed;
    manifest.config = {{"train_days", o.train_days}, {"leads", o.leads},  {"experiments", o.experiments},
                       {"seed", o.seed},             {"models", o.models}, {"grid", o.grid},
                       {"season", o.season},         {"origins", report.origins}};
    manifest.artifacts = {"rmse_table.csv", "experiment_errors.csv"};
    manifest.rerun_args = {"backtest",     "--series",      o.series,
                           "--train-days", std::to_string(o.train_days),
                           "--leads",      join(lead_text), "--experiments",
                           std::to_string(o.experiments),   "--seed",
                           std::to_string(o.seed),          "--models",
                           join(o.models), "--grid",        o.grid,
                           "--season",     std::to_string(o.season)};
    write_manifest(dir / "manifest.json", manifest);

    print_table(report, out);
    return kExitOk;
}

// -------------------------------------------------------------- forecast

struct ForecastOptions {
    std::string series;
    long horizon = 0;
    bool auto_tune = false;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::size_t season = 365;
    std::string grid = "default";
    std::size_t context = 365;
    std::string output;
};

void add_forecast(CLI::App& app, ForecastOptions& o) {
    app.add_option("--series", o.series, "Clean series CSV (from `ingest`)")->required();
    app.add_option("--horizon", o.horizon, "Days to forecast past the end of the series")->required();
    auto* auto_flag = app.add_flag("--auto", o.auto_tune, "Choose coefficients by grid search (default)");
    auto* a = app.add_option("--alpha", o.alpha, "Level smoothing coefficient")->check(CLI::Range(0.0, 1.0));
    auto* b = app.add_option("--beta", o.beta, "Trend smoothing coefficient")->check(CLI::Range(0.0, 1.0));
    auto* g = app.add_option("--gamma", o.gamma, "Seasonal smoothing coefficient")->check(CLI::Range(0.0, 1.0));
    for (auto* opt : {a, b, g}) opt->excludes(auto_flag);
    a->needs(b, g);
    b->needs(a, g);
    g->needs(a, b);
    app.add_option("--season", o.season, "Season length in days")->capture_default_str();
    app.add_option("--grid", o.grid, "Parameter grid preset for --auto")
        ->check(CLI::IsMember({"coarse", "default", "fine"}))
        ->capture_default_str();
    app.add_option("--context", o.context, "Trailing observed days to include in the trace")->capture_default_str();
    app.add_option("--output", o.output, "Plot-ready trace CSV to write")->required();
}

int run_forecast_cmd(const ForecastOptions& o, std::ostream& out) {
    if (o.horizon < 1) throw UsageError("--horizon must be >= 1");
    const std::string text = read_file(o.series);
    TimeSeries series;
    try {
        series = read_series_csv(text);
    } catch (const Error& e) {
        throw Error(e.code(), o.series + ": " + e.what());
    }

    SmoothingParams params;
    params.season_length = o.season;
    const bool tuned = !o.alpha.has_value();
    std::optional<FitResult> fit;
    if (tuned) {
        fit = grid_search(series, grid_preset(o.grid), o.season);
        params = fit->params;
    } else {
        params = SmoothingParams{*o.alpha, *o.beta, *o.gamma, o.season};
        try {
            params.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    const HWState state = hw_fit(series, params);

    const auto horizon = static_cast<std::size_t>(o.horizon);
    const auto dates = series.dates(horizon);
    const std::size_t n = series.size();
    const std::size_t first = n > o.context ? n - o.context : 0;
    std::string csv = "date,actual,forecast\n";
    for (std::size_t i = first; i < n; ++i) {
        csv += format_iso_date(dates[i]) + ',' + format_number(series[i]) + ",\n";
    }
    for (std::size_t m = 1; m <= horizon; ++m) {
        csv += format_iso_date(dates[n + m - 1]) + ",," +
               format_number(hw_forecast(state, static_cast<int>(m), params)) + '\n';
    }
    const fs::path output(o.output);
    write_file(output, csv);

    RunManifest manifest;
    manifest.command = "forecast";
    manifest.input_path = o.series;
    manifest.input_sha256 = sha256_hex(text);
    manifest.config = {{"horizon", o.horizon},
                       {"mode", tuned ? "auto" : "explicit"},
                       {"alpha", params.alpha},
                       {"beta", params.beta},
                       {"gamma", params.gamma},
                       {"season", o.season},
                       {"grid", tuned ? o.grid : ""},
                       {"context", o.context}};
    if (fit) manifest.config["in_sample_rmse"] = fit->in_sample_rmse;
    manifest.artifacts = {output.filename().string()};
    manifest.rerun_args = {"forecast", "--series", o.series, "--horizon", std::to_string(o.horizon)};
    if (tuned) {
        manifest.rerun_args.insert(manifest.rerun_args.end(), {"--auto", "--grid", o.grid});
    } else {
        manifest.rerun_args.insert(manifest.rerun_args.end(),
                                   {"--alpha", format_number(params.alpha), "--beta", format_number(params.beta),
                                    "--gamma", format_number(params.gamma)});
    }
    manifest.rerun_args.insert(manifest.rerun_args.end(),
                               {"--season", std::to_string(o.season), "--context", std::to_string(o.context)});
    write_manifest(manifest_path_for(output), manifest);

    out << "alpha=" << format_number(params.alpha) << " beta=" << format_number(params.beta)
        << " gamma=" << format_number(params.gamma) << " season=" << o.season;
    if (fit) out << " in-sample one-step RMSE=" << format_fixed(fit->in_sample_rmse, 3) << " K";
    out << '\n' << "wrote " << horizon << " forecast rows to " << o.output << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Day-ahead air temperature forecasting with additive Holt-Winters smoothing", "tempcast"};
    app.set_version_flag("--version", toolkit_version());
    app.require_subcommand(1);

    IngestOptions ingest_opts;
    BacktestOptions backtest_opts;
    ForecastOptions forecast_opts;
    auto* ingest = app.add_subcommand("ingest", "Clean a NOAA CDO daily-summaries export into a Kelvin series");
    auto* backtest = app.add_subcommand("backtest", "Rolling-origin RMSE comparison of the three models");
    auto* forecast = app.add_subcommand("forecast", "Fit on the full series and write a plot-ready forecast trace");
    add_ingest(*ingest, ingest_opts);
    add_backtest(*backtest, backtest_opts);
    add_forecast(*forecast, forecast_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ingest->parsed()) return run_ingest(ingest_opts, out);
        if (backtest->parsed()) return run_backtest_cmd(backtest_opts, out);
        if (forecast->parsed()) return run_forecast_cmd(forecast_opts, out);
        err << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::InvalidConfig ? kExitUsage : kExitData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("tempcast");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tempcast::cli
