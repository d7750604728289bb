#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace mffdfa::cli {

using nlohmann::json;

namespace {

CliError input_error(const std::string& message)
{
    return CliError(MFFDFA_ERR_INPUT, message);
}

int abscissa_code(const std::string& name)
{
    if (name == "raw")
        return MFFDFA_ABSCISSA_RAW;
    if (name == "normalized")
        return MFFDFA_ABSCISSA_NORMALIZED;
    throw input_error("unknown abscissa '" + name + "' (expected raw or normalized)");
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
std::vector<T> field_as(const mffdfa_result* r, mffdfa_field f)
{
    const auto raw = result_field(r, f);
    return std::vector<T>(raw.begin(), raw.end());
}

} // namespace

json to_json(const AnalysisConfig& c)
{
    return json{
        {"method", c.method},       {"m", c.m},
        {"k", c.k},                 {"q_min", c.q_min},
        {"q_max", c.q_max},         {"q_step", c.q_step},
        {"s_min", c.s_min},         {"s_max", c.s_max},
        {"n_scales", c.n_scales},   {"abscissa", c.abscissa},
        {"fit_s_lo", c.fit_s_lo},   {"fit_s_hi", c.fit_s_hi},
        {"log_returns", c.log_returns}, {"drop_overnight", c.drop_overnight},
        {"seed", c.seed},
    };
}

void merge_json(AnalysisConfig& c, const json& j)
{
    if (!j.is_object())
        throw input_error("configuration must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "method") c.method = value.get<std::string>();
            else if (key == "m") c.m = value.get<int>();
            else if (key == "k") c.k = value.get<std::size_t>();
            else if (key == "q_min") c.q_min = value.get<double>();
            else if (key == "q_max") c.q_max = value.get<double>();
            else if (key == "q_step") c.q_step = value.get<double>();
            else if (key == "s_min") c.s_min = value.get<std::size_t>();
            else if (key == "s_max") c.s_max = value.get<std::size_t>();
            else if (key == "n_scales") c.n_scales = value.get<std::size_t>();
            else if (key == "abscissa") c.abscissa = value.get<std::string>();
            else if (key == "fit_s_lo") c.fit_s_lo = value.get<std::size_t>();
            else if (key == "fit_s_hi") c.fit_s_hi = value.get<std::size_t>();
            else if (key == "log_returns") c.log_returns = value.get<bool>();
            else if (key == "drop_overnight") c.drop_overnight = value.get<bool>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else throw input_error("unknown configuration key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw input_error(std::string("bad configuration value: ") + e.what());
    }
}

AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    merge_json(base, j);
    return base;
}

mffdfa_config to_c_config(const AnalysisConfig& c, unsigned threads)
{
    mffdfa_config out;
    mffdfa_config_default(&out);
    check(mffdfa_method_parse(c.method.c_str(), &out.method));
    out.order = c.m;
    out.overlap = c.k;
    out.q_min = c.q_min;
    out.q_max = c.q_max;
    out.q_step = c.q_step;
    out.s_min = c.s_min;
    out.s_max = c.s_max;
    out.n_scales = c.n_scales;
    out.abscissa = abscissa_code(c.abscissa);
    out.fit_s_lo = c.fit_s_lo;
    out.fit_s_hi = c.fit_s_hi;
    out.threads = threads;
    return out;
}

CsvSeries parse_csv(std::istream& in, const std::string& origin)
{
    CsvSeries out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty())
            continue;
        if (text.front() == '#') {
            if (text.rfind("# session", 0) == 0 || text.rfind("#session", 0) == 0)
                out.session_starts.push_back(out.values.size());
            continue;
        }
        std::string field = text;
        const auto comma = text.find(',');
        if (comma != std::string::npos) {
            field = trim(text.substr(0, comma));
            if (out.ignored_columns++ == 0)
                std::cerr << "warning: " << origin << ":" << line_no
                          << ": ignoring columns after the first\n";
        }
        double value = 0.0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        if (!field.empty() && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw input_error(origin + ":" + std::to_string(line_no) + ": cannot parse number '" + field + "'");
        out.values.push_back(value);
    }
    return out;
}

CsvSeries read_csv(const std::string& path)
{
    if (path == "-")
        return parse_csv(std::cin, "<stdin>");
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open input file '" + path + "'");
    return parse_csv(in, path);
}

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_series_csv(std::ostream& out, const std::vector<double>& values,
                      const std::vector<std::string>& header_comments)
{
    for (const auto& c : header_comments)
        out << "# " << c << '\n';
    for (double v : values)
        out << format_double(v) << '\n';
}

double ResultDocument::hurst() const
{
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (std::abs(q[i] - 2.0) < 1e-9)
            return h[i];
    }
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        if (q[i] < 2.0 && q[i + 1] > 2.0) {
            const double t = (2.0 - q[i]) / (q[i + 1] - q[i]);
            return h[i] + t * (h[i + 1] - h[i]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

json to_json(const ResultDocument& d)
{
    return json{
        {"config", to_json(d.config)},
        {"hurst", {{"q", d.q}, {"h", d.h}, {"fit_r2", d.fit_r2}, {"intercept", d.intercept}}},
        {"spectrum", {{"q", d.q}, {"alpha", d.alpha}, {"f_alpha", d.f_alpha}}},
        {"delta_alpha", d.delta_alpha},
        {"diagnostics",
         {
             {"series_length", d.series_length},
             {"scales", d.scales},
             {"segment_counts", d.segment_counts},
             {"zero_variance_counts", d.zero_variance_counts},
             {"rank_deficient_fits", d.rank_deficient_fits},
             {"selection", {{"bases", d.basis_names}, {"fractions", d.selection_fractions}}},
             {"fluctuation", d.fluctuation},
         }},
    };
}

ResultDocument result_from_json(const json& j)
{
    try {
        ResultDocument d;
        merge_json(d.config, j.at("config"));
        const auto& hurst = j.at("hurst");
        d.q = hurst.at("q").get<std::vector<double>>();
        d.h = hurst.at("h").get<std::vector<double>>();
        d.fit_r2 = hurst.at("fit_r2").get<std::vector<double>>();
        d.intercept = hurst.at("intercept").get<std::vector<double>>();
        const auto& spectrum = j.at("spectrum");
        d.alpha = spectrum.at("alpha").get<std::vector<double>>();
        d.f_alpha = spectrum.at("f_alpha").get<std::vector<double>>();
        d.delta_alpha = j.at("delta_alpha").get<double>();
        const auto& diag = j.at("diagnostics");
        d.series_length = diag.at("series_length").get<std::size_t>();
        d.scales = diag.at("scales").get<std::vector<std::size_t>>();
        d.segment_counts = diag.at("segment_counts").get<std::vector<std::size_t>>();
        d.zero_variance_counts = diag.at("zero_variance_counts").get<std::vector<std::size_t>>();
        d.rank_deficient_fits = diag.at("rank_deficient_fits").get<std::vector<std::size_t>>();
        d.basis_names = diag.at("selection").at("bases").get<std::vector<std::string>>();
        d.selection_fractions = diag.at("selection").at("fractions").get<std::vector<double>>();
        d.fluctuation = diag.at("fluctuation").get<std::vector<std::vector<double>>>();
        return d;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed result document: ") + e.what());
    }
}

void write_result_csv(std::ostream& out, const ResultDocument& d)
{
    out << "# method=" << d.config.method << " k=" << d.config.k << " m=" << d.config.m
        << " series_length=" << d.series_length << '\n';
    out << "# delta_alpha=" << format_double(d.delta_alpha) << '\n';
    for (std::size_t i = 0; i < d.basis_names.size() && i < d.selection_fractions.size(); ++i)
        out << "# selection " << d.basis_names[i] << '=' << format_double(d.selection_fractions[i]) << '\n';
    out << "q,h,fit_r2,intercept,alpha,f_alpha\n";
    for (std::size_t i = 0; i < d.q.size(); ++i) {
        out << format_double(d.q[i]) << ',' << format_double(d.h[i]) << ',' << format_double(d.fit_r2[i]) << ','
            << format_double(d.intercept[i]) << ',' << format_double(d.alpha[i]) << ','
            << format_double(d.f_alpha[i]) << '\n';
    }
}

ResultDocument run_analysis(const std::vector<double>& input, const std::vector<std::size_t>& session_starts,
                            AnalysisConfig config, unsigned threads)
{
    Series series = make_series(input);
    if (config.log_returns) {
        mffdfa_series* returns = nullptr;
        const std::vector<std::size_t> breaks = config.drop_overnight ? session_starts : std::vector<std::size_t>{};
        check(mffdfa_series_log_returns(series.get(), breaks.data(), breaks.size(), &returns));
        series.reset(returns);
    }

    const std::size_t n = mffdfa_series_length(series.get());
    if (config.s_max == 0)
        config.s_max = n / 10;
    if (config.method == "mfdfa")
        config.k = 1;

    const mffdfa_config c = to_c_config(config, threads);
    mffdfa_result* raw = nullptr;
    check(mffdfa_analyze(series.get(), &c, &raw));
    const Result result(raw);

    ResultDocument d;
    d.config = config;
    d.series_length = n;
    d.q = result_field(raw, MFFDFA_FIELD_Q);
    d.h = result_field(raw, MFFDFA_FIELD_H);
    d.fit_r2 = result_field(raw, MFFDFA_FIELD_FIT_R2);
    d.intercept = result_field(raw, MFFDFA_FIELD_INTERCEPT);
    d.alpha = result_field(raw, MFFDFA_FIELD_ALPHA);
    d.f_alpha = result_field(raw, MFFDFA_FIELD_F_ALPHA);
    d.delta_alpha = mffdfa_result_delta_alpha(raw);
    d.scales = field_as<std::size_t>(raw, MFFDFA_FIELD_SCALES);
    d.segment_counts = field_as<std::size_t>(raw, MFFDFA_FIELD_SEGMENT_COUNTS);
    d.zero_variance_counts = field_as<std::size_t>(raw, MFFDFA_FIELD_ZERO_VARIANCE);
    d.rank_deficient_fits = field_as<std::size_t>(raw, MFFDFA_FIELD_RANK_DEFICIENT);
    d.selection_fractions = result_field(raw, MFFDFA_FIELD_SELECTION);
    if (!d.selection_fractions.empty()) {
        for (std::size_t i = 0; i < mffdfa_result_basis_count(raw); ++i)
            d.basis_names.emplace_back(mffdfa_result_basis_name(raw, i));
    }
    const auto surface = result_field(raw, MFFDFA_FIELD_FLUCTUATION);
    const std::size_t ns = d.scales.size();
    for (std::size_t iq = 0; iq < d.q.size(); ++iq)
        d.fluctuation.emplace_back(surface.begin() + static_cast<std::ptrdiff_t>(iq * ns),
                                   surface.begin() + static_cast<std::ptrdiff_t>((iq + 1) * ns));
    return d;
}

std::vector<int> parse_m_range(const std::string& text)
{
    std::vector<int> orders;
    auto to_int = [&](const std::string& s) {
        int v = 0;
        const std::string t = trim(s);
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
            throw input_error("bad m range '" + text + "'");
        return v;
    };
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash != std::string::npos) {
            const int lo = to_int(item.substr(0, dash));
            const int hi = to_int(item.substr(dash + 1));
            if (hi < lo)
                throw input_error("bad m range '" + text + "'");
            for (int m = lo; m <= hi; ++m)
                orders.push_back(m);
        } else {
            orders.push_back(to_int(item));
        }
    }
    if (orders.empty())
        throw input_error("empty m range");
    for (int m : orders) {
        if (m < 1 || m > 10)
            throw input_error("m range must lie within [1, 10], got " + std::to_string(m));
    }
    return orders;
}

SweepResult run_sweep(const std::vector<double>& input, const std::vector<std::size_t>& session_starts,
                      const std::vector<int>& orders, const AnalysisConfig& config, unsigned threads)
{
    SweepResult sweep;
    sweep.config = config;
    for (int m : orders) {
        for (const char* method : {"mfdfa", "mfdfa_overlap"}) {
            AnalysisConfig c = config;
            c.method = method;
            c.m = m;
            ResultDocument doc = run_analysis(input, session_starts, c, threads);
            sweep.rows.push_back({m, method, doc.config.k, doc.hurst(), doc.delta_alpha});
            sweep.runs.push_back(std::move(doc));
        }
    }
    return sweep;
}

json to_json(const SweepResult& sweep)
{
    json rows = json::array();
    for (const auto& r : sweep.rows)
        rows.push_back({{"m", r.m}, {"method", r.method}, {"k", r.k}, {"h2", r.hurst}, {"delta_alpha", r.delta_alpha}});
    json runs = json::array();
    for (const auto& d : sweep.runs)
        runs.push_back(to_json(d));
    return json{{"config", to_json(sweep.config)}, {"table", rows}, {"runs", runs}};
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep)
{
    out << "m,method,k,h2,delta_alpha\n";
    for (const auto& r : sweep.rows)
        out << r.m << ',' << r.method << ',' << r.k << ',' << format_double(r.hurst) << ','
            << format_double(r.delta_alpha) << '\n';
}

std::vector<double> q_values(double q_min, double q_max, double q_step)
{
    std::size_t n = 0;
    check(mffdfa_q_grid(q_min, q_max, q_step, nullptr, 0, &n));
    std::vector<double> q(n);
    check(mffdfa_q_grid(q_min, q_max, q_step, q.data(), q.size(), &n));
    return q;
}

std::vector<OracleRow> run_oracle(double a, double q_min, double q_max, double q_step)
{
    const auto q = q_values(q_min, q_max, q_step);
    std::vector<double> tau(q.size()), alpha(q.size()), f(q.size()), h(q.size());
    check(mffdfa_cascade_oracle(a, q.data(), q.size(), tau.data(), alpha.data(), f.data(), h.data()));
    std::vector<OracleRow> rows;
    for (std::size_t i = 0; i < q.size(); ++i)
        rows.push_back({q[i], tau[i], alpha[i], f[i], h[i]});
    return rows;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleRow>& rows)
{
    out << "q,tau,alpha,f_alpha,h\n";
    for (const auto& r : rows)
        out << format_double(r.q) << ',' << format_double(r.tau) << ',' << format_double(r.alpha) << ','
            << format_double(r.f_alpha) << ',' << format_double(r.h) << '\n';
}

} // namespace mffdfa::cli
