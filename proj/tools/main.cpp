#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_support.hpp"

using namespace mffdfa::cli;

namespace {

// Options shared by analyze and sweep-m. Values land in `flags`; only the
// options the user actually passed override the config file.
struct ConfigFlags {
    AnalysisConfig flags;
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::function<void(AnalysisConfig&)>>> bound;

    template <typename T>
    void add(CLI::App& app, const std::string& name, T AnalysisConfig::*member, const std::string& help)
    {
        auto* opt = app.add_option(name, flags.*member, help);
        bound.emplace_back(opt, [this, member](AnalysisConfig& c) { c.*member = flags.*member; });
    }

    void add_flag(CLI::App& app, const std::string& name, bool AnalysisConfig::*member, const std::string& help)
    {
        auto* opt = app.add_flag(name, flags.*member, help);
        bound.emplace_back(opt, [this, member](AnalysisConfig& c) { c.*member = flags.*member; });
    }

    void attach(CLI::App& app, bool with_method)
    {
        app.add_option("--config", config_path, "JSON config file (flags override it)");
        if (with_method)
            add(app, "--method", &AnalysisConfig::method, "mfdfa | mfdfa_overlap | mffdfa");
        add(app, "-m,--order", &AnalysisConfig::m, "fixed polynomial order for mfdfa / mfdfa_overlap");
        add(app, "-k,--overlap", &AnalysisConfig::k, "overlap factor k; windows advance by floor(s/k)");
        add(app, "--q-min", &AnalysisConfig::q_min, "smallest moment q");
        add(app, "--q-max", &AnalysisConfig::q_max, "largest moment q");
        add(app, "--q-step", &AnalysisConfig::q_step, "q grid step");
        add(app, "--s-min", &AnalysisConfig::s_min, "smallest scale");
        add(app, "--s-max", &AnalysisConfig::s_max, "largest scale (default floor(N/10))");
        add(app, "--n-scales", &AnalysisConfig::n_scales, "number of log-spaced scales");
        add(app, "--abscissa", &AnalysisConfig::abscissa, "raw | normalized regressor argument");
        add(app, "--fit-s-lo", &AnalysisConfig::fit_s_lo, "lower scale of the scaling fit");
        add(app, "--fit-s-hi", &AnalysisConfig::fit_s_hi, "upper scale of the scaling fit");
        add(app, "--seed", &AnalysisConfig::seed, "recorded in the config echo");
        add_flag(app, "--log-returns", &AnalysisConfig::log_returns, "input is a price series");
        add_flag(app, "--drop-overnight", &AnalysisConfig::drop_overnight,
                 "drop returns spanning '# session' markers");
    }

    AnalysisConfig resolve() const
    {
        AnalysisConfig c;
        if (!config_path.empty())
            c = load_config_file(config_path, c);
        for (const auto& [opt, apply] : bound) {
            if (opt->count() > 0)
                apply(c);
        }
        return c;
    }
};

void emit(const std::string& path, const std::function<void(std::ostream&)>& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw CliError(MFFDFA_ERR_INPUT, "cannot open output file '" + path + "'");
    write(out);
}

const char* status_kind(mffdfa_status s)
{
    switch (s) {
    case MFFDFA_ERR_INPUT:
        return "input_error";
    case MFFDFA_ERR_NUMERICAL:
        return "numerical_error";
    default:
        return "internal_error";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multifractal (flexibly) detrended fluctuation analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mffdfa_version()));

    std::string output;
    std::string format = "json";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto* analyze = app.add_subcommand("analyze", "analyze a one-column CSV series");
    std::string analyze_input;
    ConfigFlags analyze_flags;
    analyze->add_option("input", analyze_input, "input CSV ('-' for stdin)")->required();
    analyze_flags.attach(*analyze, true);

    auto* sweep = app.add_subcommand("sweep-m", "H and delta-alpha as a function of polynomial order");
    std::string sweep_input;
    std::string m_range = "1-10";
    ConfigFlags sweep_flags;
    sweep->add_option("input", sweep_input, "input CSV ('-' for stdin)")->required();
    sweep->add_option("--m-range", m_range, "orders, e.g. 1-10 or 1,2,3");
    sweep_flags.attach(*sweep, false);

    for (auto* sub : {analyze, sweep}) {
        sub->add_option("-o,--output", output, "output file (default stdout)");
        sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--threads", threads, "worker threads (results do not depend on it)");
    }

    auto* generate = app.add_subcommand("generate", "write a synthetic series as CSV");
    std::string kind;
    double hurst = 0.5;
    std::size_t length = 10000;
    std::uint64_t seed = 0;
    double cascade_a = 0.65;
    unsigned n_max = 17;
    generate->add_option("kind", kind, "fgn | fbm | cascade")
        ->required()
        ->check(CLI::IsMember({"fgn", "fbm", "cascade"}));
    generate->add_option("--hurst", hurst, "Hurst exponent in (0, 1)");
    generate->add_option("--length", length, "number of samples (fgn/fbm)");
    generate->add_option("--seed", seed, "random seed (fgn/fbm)");
    generate->add_option("--a", cascade_a, "cascade multiplier in (0.5, 1)");
    generate->add_option("--n-max", n_max, "cascade depth; length 2^n_max");
    generate->add_option("-o,--output", output, "output file (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "closed-form binomial cascade spectrum as CSV");
    double oracle_a = 0.65, q_min = -10.0, q_max = 10.0, q_step = 0.2;
    oracle->add_option("--a", oracle_a, "cascade multiplier in (0.5, 1)");
    oracle->add_option("--q-min", q_min, "smallest q");
    oracle->add_option("--q-max", q_max, "largest q");
    oracle->add_option("--q-step", q_step, "q step");
    oracle->add_option("-o,--output", output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return MFFDFA_ERR_INPUT;
    }

    try {
        if (analyze->parsed()) {
            const CsvSeries csv = read_csv(analyze_input);
            const ResultDocument doc = run_analysis(csv.values, csv.session_starts, analyze_flags.resolve(), threads);
            emit(output, [&](std::ostream& out) {
                if (format == "csv")
                    write_result_csv(out, doc);
                else
                    out << to_json(doc).dump(2) << '\n';
            });
        } else if (sweep->parsed()) {
            const CsvSeries csv = read_csv(sweep_input);
            const SweepResult result =
                run_sweep(csv.values, csv.session_starts, parse_m_range(m_range), sweep_flags.resolve(), threads);
            emit(output, [&](std::ostream& out) {
                if (format == "csv")
                    write_sweep_csv(out, result);
                else
                    out << to_json(result).dump(2) << '\n';
            });
        } else if (generate->parsed()) {
            mffdfa_series* raw = nullptr;
            std::ostringstream header;
            header << "mffdfa generate kind=" << kind;
            if (kind == "cascade") {
                check(mffdfa_generate_cascade(cascade_a, n_max, &raw));
                header << " a=" << format_double(cascade_a) << " n_max=" << n_max;
            } else {
                check(mffdfa_generate_fgn(hurst, length, seed, kind == "fbm" ? 1 : 0, &raw));
                header << " hurst=" << format_double(hurst) << " length=" << length << " seed=" << seed;
            }
            const Series series(raw);
            const auto values = series_values(series.get());
            emit(output, [&](std::ostream& out) { write_series_csv(out, values, {header.str()}); });
        } else if (oracle->parsed()) {
            const auto rows = run_oracle(oracle_a, q_min, q_max, q_step);
            emit(output, [&](std::ostream& out) { write_oracle_csv(out, rows); });
        }
    } catch (const CliError& e) {
        const nlohmann::json line{{"error", status_kind(e.status())}, {"code", static_cast<int>(e.status())},
                                  {"message", e.what()}};
        std::cerr << line.dump() << '\n' << "mffdfa: " << e.what() << '\n';
        return e.status();
    } catch (const std::exception& e) {
        const nlohmann::json line{{"error", "internal_error"}, {"code", 4}, {"message", e.what()}};
        std::cerr << line.dump() << '\n' << "mffdfa: " << e.what() << '\n';
        return MFFDFA_ERR_INTERNAL;
    }
    return 0;
}
