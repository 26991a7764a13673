#include "volspill/report.hpp"

#include "volspill/error.hpp"
#include "volspill/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <sstream>

namespace volspill {

using nlohmann::json;

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "NA";
    if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
    if (value == 0.0) return "0";
    return fmt::format("{:.{}g}", value, precision);
}

namespace {

constexpr int kPrecision = 10;

std::string num(double v) { return format_number(v, kPrecision); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_json(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

double read_number(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::vector<double> read_numbers(const json& j) {
    std::vector<double> out;
    for (const auto& x : j) out.push_back(read_number(x));
    return out;
}

json numbers_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(number_or_null(x));
    return arr;
}

json vector_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number_or_null(v[i]));
    return arr;
}

json stats_json(const DescriptiveStats& s) {
    return json{{"mean", s.mean},         {"median", s.median},     {"maximum", s.maximum},
                {"minimum", s.minimum},   {"std_dev", s.std_dev},   {"skewness", s.skewness},
                {"kurtosis", s.kurtosis}, {"jarque_bera", s.jarque_bera}, {"jb_p_value", s.jb_p_value},
                {"n", s.n}};
}

json fit_json(const GarchFit& fit) {
    const auto& p = fit.params;
    json params = {{"constant", p.constant},
                   {"ar1", p.ar1},
                   {"in_mean", p.in_mean},
                   {"omega", p.omega},
                   {"alpha", p.alpha},
                   {"beta", p.beta},
                   {"gamma", p.gamma},
                   {"power", p.power},
                   {"rho_c", p.rho_c},
                   {"component_loading", p.component_loading},
                   {"sigma_bar", p.sigma_bar}};
    json estimates = json::array();
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        estimates.push_back({{"name", fit.param_names[i]},
                             {"value", number_or_null(fit.param_values[i])},
                             {"std_error", number_or_null(i < fit.std_errors.size() ? fit.std_errors[i] : NAN)},
                             {"p_value", number_or_null(i < fit.p_values.size() ? fit.p_values[i] : NAN)}});
    }
    return json{{"family", std::string(family_name(fit.spec.family))},
                {"p", fit.spec.p},
                {"q", fit.spec.q},
                {"params", params},
                {"estimates", estimates},
                {"log_likelihood", number_or_null(fit.log_likelihood)},
                {"aic", number_or_null(fit.aic)},
                {"free_parameters", fit.free_parameters()},
                {"observations", fit.cond_variance.size()},
                {"persistence", number_or_null(fit.persistence)},
                {"leverage", optional_json(fit.leverage)},
                {"asymmetry_degree", optional_json(fit.asymmetry_degree)},
                {"converged", fit.converged},
                {"iterations", fit.iterations},
                {"gradient_norm", number_or_null(fit.gradient_norm)},
                {"message", fit.message}};
}

json spillover_json(const SpilloverTable& t) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) rows.push_back(vector_json(t.matrix.row(i).transpose()));
    return json{{"markets", t.markets},
                {"horizon", t.horizon},
                {"lag_order", t.lag_order},
                {"matrix", rows},
                {"from_others", vector_json(t.from_others)},
                {"to_others", vector_json(t.to_others)},
                {"net", vector_json(t.net)},
                {"includes_own", vector_json(t.includes_own)},
                {"from_others_share", vector_json(t.from_others_share())},
                {"to_others_share", vector_json(t.to_others_share())},
                {"total_index", t.total_index}};
}

std::optional<double> estimate(const GarchFit& fit, std::string_view name, bool p_value) {
    for (std::size_t i = 0; i < fit.param_names.size(); ++i) {
        if (fit.param_names[i] == name) {
            if (!p_value) return fit.param_values[i];
            return i < fit.p_values.size() ? std::optional<double>(fit.p_values[i]) : std::nullopt;
        }
    }
    return std::nullopt;
}

std::string cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
    out << content;
}

std::string safe_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    }
    return out;
}

std::vector<const GarchFit*> fit_pointers(const WindowResult& w) {
    std::vector<const GarchFit*> out;
    for (const auto& f : w.fits) out.push_back(f ? &*f : nullptr);
    return out;
}

json window_json(const EventReport& report, const WindowResult& w) {
    json stats = json::object();
    json fits = json::object();
    json candidates = json::object();
    for (std::size_t m = 0; m < report.markets.size(); ++m) {
        const auto& name = report.markets[m];
        stats[name] = stats_json(w.stats[m]);
        if (w.fits[m]) {
            fits[name] = fit_json(*w.fits[m]);
            json cands = json::array();
            for (const auto& c : w.candidates[m]) {
                cands.push_back({{"family", std::string(family_name(c.family))},
                                 {"converged", c.converged},
                                 {"aic", number_or_null(c.aic)},
                                 {"failure", c.failure}});
            }
            candidates[name] = cands;
        }
    }
    json dates = json::array();
    if (!w.dates.empty()) dates = {format_date(w.dates.front()), format_date(w.dates.back())};
    return json{{"observations", w.dates.size()},
                {"date_range", dates},
                {"stats", stats},
                {"fits", fits},
                {"candidates", candidates},
                {"spillover", spillover_json(w.spillover)}};
}

}  // namespace

void write_stats_csv(std::ostream& out, const std::vector<std::string>& markets,
                     const std::vector<DescriptiveStats>& stats) {
    out << "statistic";
    for (const auto& m : markets) out << ',' << csv_field(m);
    out << '\n';
    auto row = [&](std::string_view label, auto getter) {
        out << label;
        for (const auto& s : stats) out << ',' << num(getter(s));
        out << '\n';
    };
    row("Mean", [](const DescriptiveStats& s) { return s.mean; });
    row("Median", [](const DescriptiveStats& s) { return s.median; });
    row("Maximum", [](const DescriptiveStats& s) { return s.maximum; });
    row("Minimum", [](const DescriptiveStats& s) { return s.minimum; });
    row("Std. Dev.", [](const DescriptiveStats& s) { return s.std_dev; });
    row("Skewness", [](const DescriptiveStats& s) { return s.skewness; });
    row("Kurtosis", [](const DescriptiveStats& s) { return s.kurtosis; });
    row("Jarque-Bera", [](const DescriptiveStats& s) { return s.jarque_bera; });
    row("Probability", [](const DescriptiveStats& s) { return s.jb_p_value; });
    row("Observations", [](const DescriptiveStats& s) { return static_cast<double>(s.n); });
}

std::string stats_to_json(const std::vector<std::string>& markets, const std::vector<DescriptiveStats>& stats) {
    json j = json::object();
    for (std::size_t m = 0; m < markets.size(); ++m) j[markets[m]] = stats_json(stats[m]);
    return j.dump(2) + "\n";
}

std::string fit_to_json(const GarchFit& fit) { return fit_json(fit).dump(2) + "\n"; }

GarchFit fit_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(fmt::format("invalid fit JSON: {}", e.what()));
    }
    GarchFit fit;
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw InputError("unknown family in fit JSON");
    fit.spec = GarchSpec{*family, j.at("p").get<int>(), j.at("q").get<int>()};
    const auto& p = j.at("params");
    fit.params.constant = read_number(p.at("constant"));
    fit.params.ar1 = read_number(p.at("ar1"));
    fit.params.in_mean = read_number(p.at("in_mean"));
    fit.params.omega = read_number(p.at("omega"));
    fit.params.alpha = read_numbers(p.at("alpha"));
    fit.params.beta = read_numbers(p.at("beta"));
    fit.params.gamma = read_numbers(p.at("gamma"));
    fit.params.power = read_number(p.at("power"));
    fit.params.rho_c = read_number(p.at("rho_c"));
    fit.params.component_loading = read_number(p.at("component_loading"));
    fit.params.sigma_bar = read_number(p.at("sigma_bar"));
    for (const auto& e : j.at("estimates")) {
        fit.param_names.push_back(e.at("name").get<std::string>());
        fit.param_values.push_back(read_number(e.at("value")));
        fit.std_errors.push_back(read_number(e.at("std_error")));
        fit.p_values.push_back(read_number(e.at("p_value")));
    }
    fit.log_likelihood = read_number(j.at("log_likelihood"));
    fit.aic = read_number(j.at("aic"));
    fit.persistence = read_number(j.at("persistence"));
    if (!j.at("leverage").is_null()) fit.leverage = j.at("leverage").get<double>();
    if (!j.at("asymmetry_degree").is_null()) fit.asymmetry_degree = j.at("asymmetry_degree").get<double>();
    fit.converged = j.at("converged").get<bool>();
    fit.iterations = j.at("iterations").get<int>();
    fit.gradient_norm = read_number(j.at("gradient_norm"));
    fit.message = j.at("message").get<std::string>();
    return fit;
}

void write_fits_csv(std::ostream& out, const std::vector<std::string>& markets,
                    const std::vector<const GarchFit*>& fits) {
    out << "market,family,C,C_p,lagged_return,lagged_return_p,omega,omega_p,alpha,alpha_p,beta,beta_p,"
           "gamma,gamma_p,persistence,leverage,asymmetry_degree,aic,log_likelihood,converged\n";
    for (std::size_t m = 0; m < markets.size(); ++m) {
        const GarchFit* f = fits[m];
        out << csv_field(markets[m]) << ',';
        if (f == nullptr) {
            out << "FAILED,,,,,,,,,,,,,,,,,,\n";
            continue;
        }
        const std::string_view omega_name = f->spec.family == Family::CGARCH ? "sigma_bar" : "omega";
        const auto beta = estimate(*f, "beta1", false)
                              ? estimate(*f, "beta1", false)
                              : std::optional<double>(f->params.beta.empty() ? NAN : f->params.beta[0]);
        out << family_name(f->spec.family) << ',' << cell(estimate(*f, "C", false)) << ','
            << cell(estimate(*f, "C", true)) << ',' << cell(estimate(*f, "rho", false)) << ','
            << cell(estimate(*f, "rho", true)) << ',' << cell(estimate(*f, omega_name, false)) << ','
            << cell(estimate(*f, omega_name, true)) << ',' << cell(estimate(*f, "alpha1", false)) << ','
            << cell(estimate(*f, "alpha1", true)) << ',' << cell(beta) << ','
            << cell(estimate(*f, "beta1", true)) << ',' << cell(estimate(*f, "gamma1", false)) << ','
            << cell(estimate(*f, "gamma1", true)) << ',' << num(f->persistence) << ',' << cell(f->leverage)
            << ',' << cell(f->asymmetry_degree) << ',' << num(f->aic) << ',' << num(f->log_likelihood) << ','
            << (f->converged ? "true" : "false") << '\n';
    }
}

std::string fits_to_json(const std::vector<std::string>& markets, const std::vector<const GarchFit*>& fits) {
    json j = json::object();
    for (std::size_t m = 0; m < markets.size(); ++m) {
        j[markets[m]] = fits[m] ? fit_json(*fits[m]) : json(nullptr);
    }
    return j.dump(2) + "\n";
}

void write_spillover_csv(std::ostream& out, const SpilloverTable& table, bool with_shares) {
    const Eigen::Index n = table.matrix.rows();
    out << "";
    for (const auto& m : table.markets) out << ',' << csv_field(m);
    out << ",Contribution from others";
    if (with_shares) out << ",From others / N";
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        out << csv_field(table.markets[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << num(table.matrix(i, j));
        out << ',' << num(table.from_others[i]);
        if (with_shares) out << ',' << num(table.from_others_share()[i]);
        out << '\n';
    }
    out << "Contribution to others";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << num(table.to_others[j]);
    out << ',' << num(table.total_index);
    if (with_shares) out << ',';
    out << '\n';
    out << "Contribution including own";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << num(table.includes_own[j]);
    out << ',';
    if (with_shares) out << ',';
    out << '\n';
    if (with_shares) {
        out << "To others / N";
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << num(table.to_others_share()[j]);
        out << ",,\n";
    }
}

std::string spillover_to_json(const SpilloverTable& table) { return spillover_json(table).dump(2) + "\n"; }

void write_net_csv(std::ostream& out, const SpilloverTable& table) {
    out << "market,from_others,to_others,net\n";
    for (std::size_t i = 0; i < table.markets.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out << csv_field(table.markets[i]) << ',' << num(table.from_others[k]) << ',' << num(table.to_others[k])
            << ',' << num(table.net[k]) << '\n';
    }
}

std::string report_to_json(const EventReport& report) {
    const auto& c = report.config;
    json failures = json::array();
    for (const auto& f : report.failures) {
        failures.push_back({{"market", f.market}, {"windows", f.windows}, {"reasons", f.reasons}});
    }
    json j = {
        {"config",
         {{"event_date", format_date(c.event_date)},
          {"pre", {format_date(c.pre_start), format_date(c.pre_end)}},
          {"post", {format_date(c.post_start), format_date(c.post_end)}},
          {"require_equal_length", c.require_equal_length}}},
        {"markets", report.markets},
        {"families", report.families},
        {"pre", window_json(report, report.pre)},
        {"post", window_json(report, report.post)},
        {"failures", failures},
        {"deltas",
         {{"markets", report.deltas.markets},
          {"persistence", numbers_json(report.deltas.persistence)},
          {"net", numbers_json(report.deltas.net)},
          {"total_index", report.deltas.total_index}}},
    };
    return j.dump(2) + "\n";
}

void write_event_report(const std::filesystem::path& dir, const EventReport& report, bool plots) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));

    for (const WindowResult* w : {&report.pre, &report.post}) {
        std::ostringstream stats, spill, net;
        write_stats_csv(stats, report.markets, w->stats);
        write_file(dir / fmt::format("stats_{}.csv", w->name), stats.str());
        write_file(dir / fmt::format("fits_{}.json", w->name), fits_to_json(report.markets, fit_pointers(*w)));
        write_spillover_csv(spill, w->spillover, true);
        write_file(dir / fmt::format("spillover_{}.csv", w->name), spill.str());
        write_net_csv(net, w->spillover);
        write_file(dir / fmt::format("net_{}.csv", w->name), net.str());
    }

    std::ostringstream deltas;
    deltas << "market,persistence_pre,persistence_post,persistence_delta,net_pre,net_post,net_delta\n";
    for (std::size_t i = 0; i < report.deltas.markets.size(); ++i) {
        const auto& name = report.deltas.markets[i];
        const auto m = static_cast<std::size_t>(
            std::find(report.markets.begin(), report.markets.end(), name) - report.markets.begin());
        auto net_of = [&](const SpilloverTable& t) {
            const auto k = std::find(t.markets.begin(), t.markets.end(), name) - t.markets.begin();
            return t.net[k];
        };
        deltas << csv_field(name) << ',' << num(report.pre.fits[m]->persistence) << ','
               << num(report.post.fits[m]->persistence) << ',' << num(report.deltas.persistence[i]) << ','
               << num(net_of(report.pre.spillover)) << ',' << num(net_of(report.post.spillover)) << ','
               << num(report.deltas.net[i]) << '\n';
    }
    deltas << "TOTAL_INDEX,,,," << num(report.pre.spillover.total_index) << ','
           << num(report.post.spillover.total_index) << ',' << num(report.deltas.total_index) << '\n';
    write_file(dir / "deltas.csv", deltas.str());
    write_file(dir / "report.json", report_to_json(report));

    if (!plots) return;
    const auto plot_dir = dir / "plots";
    std::filesystem::create_directories(plot_dir, ec);
    if (ec) throw InputError(fmt::format("cannot create '{}': {}", plot_dir.string(), ec.message()));
    for (const WindowResult* w : {&report.pre, &report.post}) {
        for (std::size_t m = 0; m < report.markets.size(); ++m) {
            if (!w->fits[m]) continue;
            const auto& f = *w->fits[m];
            const std::string title = fmt::format("{} conditional variance ({}, {})", report.markets[m],
                                                  family_name(f.spec.family), w->name);
            write_file(plot_dir / fmt::format("cond_variance_{}_{}.svg", safe_filename(report.markets[m]), w->name),
                       svg::line_chart(title, {{report.markets[m], f.cond_variance}}));
        }
        std::vector<double> net(w->spillover.net.data(), w->spillover.net.data() + w->spillover.net.size());
        write_file(plot_dir / fmt::format("net_spillover_{}.svg", w->name),
                   svg::bar_chart(fmt::format("Net directional spillover ({})", w->name), w->spillover.markets, net));
    }
}

}  // namespace volspill
