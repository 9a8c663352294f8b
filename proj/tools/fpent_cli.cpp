// fpent: command-line front end for floating-point entropy analysis.
//
// Exit codes: 0 success, 2 bad flags or arguments, 3 numerical failure
// (the failing component is named on stderr), 1 anything else.

#include <ctime>
#include <iostream>
#include <cmath>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpent/bounds.hpp"
#include "fpent/csv.hpp"
#include "fpent/entropy.hpp"
#include "fpent/errors.hpp"
#include "fpent/monte_carlo.hpp"
#include "fpent/multivariate.hpp"
#include "fpent/numfmt.hpp"
#include "fpent/report.hpp"
#include "fpent/sweep.hpp"

using nlohmann::json;
using namespace fpent;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Nested objects become dotted column names; arrays are left out.
void flatten(const json& j, const std::string& prefix, CsvTable& t, std::vector<std::string>& row) {
    for (const auto& [k, v] : j.items()) {
        const std::string name = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            flatten(v, name, t, row);
        } else if (!v.is_array()) {
            t.columns.push_back(name);
            if (v.is_number_float())
                row.push_back(format_double(v.get<double>()));
            else if (v.is_string())
                row.push_back(v.get<std::string>());
            else if (v.is_null())
                row.push_back("nan");
            else
                row.push_back(v.dump());
        }
    }
}

std::string render(const json& j, const std::string& fmt) {
    if (fmt == "json") return j.dump(2) + "\n";
    CsvTable t;
    std::vector<std::string> row;
    flatten(j, "", t, row);
    t.add_row(std::move(row));
    return to_csv(t);
}

std::string render(const CsvTable& t, const std::string& fmt) {
    if (fmt == "csv") return to_csv(t);
    json meta = json::object();
    for (const auto& [k, v] : t.metadata) {
        if (meta.contains(k)) {
            if (!meta[k].is_array()) meta[k] = json::array({meta[k]});
            meta[k].push_back(v);
        } else {
            meta[k] = v;
        }
    }
    json rows = json::array();
    for (const auto& r : t.rows) {
        json o = json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            try {
                const double x = parse_double(r[c]);
                o[t.columns[c]] = std::isfinite(x) ? json(x) : json(r[c]);
            } catch (const std::invalid_argument&) {
                o[t.columns[c]] = r[c];
            }
        }
        rows.push_back(std::move(o));
    }
    return json{{"metadata", meta}, {"rows", rows}}.dump(2) + "\n";
}

// Per-bin terms as rows; the summary fields go into the metadata block.
CsvTable per_bin_table(const json& doc) {
    CsvTable summary;
    std::vector<std::string> values;
    flatten(doc, "", summary, values);
    CsvTable t;
    for (std::size_t i = 0; i < values.size(); ++i) t.metadata.emplace_back(summary.columns[i], values[i]);
    t.columns = {"index", "lower", "upper", "p", "q", "Lambda", "kl", "upper_bound", "remainder"};
    for (const auto& b : doc["kl"]["per_bin"]) {
        std::vector<std::string> row;
        for (const auto& c : t.columns) {
            const auto& v = b[c];
            row.push_back(v.is_string()            ? v.get<std::string>()
                          : v.is_number_unsigned() ? std::to_string(v.get<std::uint64_t>())
                                                   : format_double(v.get<double>()));
        }
        t.add_row(std::move(row));
    }
    return t;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        out.push_back(parse_double(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

struct FormatFlags {
    int p = 3;
    int E = 4;
    void add(CLI::App* app) {
        app->add_option("-p,--p,--precision", p, "precision in bits, hidden bit included")->capture_default_str();
        app->add_option("-E,--E,--exponent-bits", E, "exponent bits")->capture_default_str();
    }
    FpFormat format() const { return FpFormat(p, E); }
};

struct Output {
    std::string path;
    std::string format;
    void add(CLI::App* app, const char* default_format) {
        format = default_format;
        app->add_option("-o,--out", path, "output file (default stdout)");
        app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy of distributions quantized to low-precision floating-point formats"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("fpent ") + tool_version);

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "list representable values and their quantization bins");
    FormatFlags grid_fmt;
    Output grid_out;
    grid_fmt.add(grid_cmd);
    grid_out.add(grid_cmd, "csv");

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "exact and approximate entropy of a quantized distribution");
    FormatFlags entropy_fmt;
    Output entropy_out;
    std::string entropy_dist, entropy_cov;
    entropy_fmt.add(entropy_cmd);
    entropy_out.add(entropy_cmd, "json");
    auto* ed = entropy_cmd->add_option("--dist", entropy_dist, "distribution, e.g. gaussian:sigma=1");
    auto* ec = entropy_cmd->add_option("--cov", entropy_cov, "zero-mean Gaussian covariance, e.g. '1,0.5;0.5,1'");
    ed->excludes(ec);
    ec->excludes(ed);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "entropy across scales, precisions or exponent widths");
    SweepSpec spec;
    std::vector<std::string> sweep_dists;
    std::string mode = "scale", quantities = "exact,approx_s,approx_tilde";
    Output sweep_out;
    bool no_timestamp = false;
    sweep_out.add(sweep_cmd, "csv");
    sweep_cmd->add_option("--mode", mode, "scale, precision or exponent")->capture_default_str();
    sweep_cmd->add_option("--dist", sweep_dists, "distribution (repeatable)")->required();
    sweep_cmd->add_option("-p,--p,--precision", spec.precision, "fixed precision")->capture_default_str();
    sweep_cmd->add_option("-E,--E,--exponent-bits", spec.exponent_bits, "fixed exponent bits")->capture_default_str();
    sweep_cmd->add_option("--points", spec.points, "scale mode: number of log-spaced scales")->capture_default_str();
    sweep_cmd->add_option("--min", spec.min, "scale mode: smallest scale")->capture_default_str();
    sweep_cmd->add_option("--max", spec.max, "scale mode: largest scale")->capture_default_str();
    sweep_cmd->add_option("--p-min", spec.p_min, "precision mode: first precision")->capture_default_str();
    sweep_cmd->add_option("--p-max", spec.p_max, "precision mode: last precision")->capture_default_str();
    sweep_cmd->add_option("--E-min", spec.E_min, "exponent mode: first exponent width")->capture_default_str();
    sweep_cmd->add_option("--E-max", spec.E_max, "exponent mode: last exponent width")->capture_default_str();
    sweep_cmd->add_option("--quantities", quantities, "subset of exact,approx_s,approx_tilde,bounds,mc")
        ->capture_default_str();
    sweep_cmd->add_option("--samples", spec.mc.sample_count, "samples per point for mc")->capture_default_str();
    sweep_cmd->add_option("--seed", spec.mc.seed, "base seed for mc (row r uses seed + r)")->capture_default_str();
    sweep_cmd->add_flag("--bias-correction", spec.mc.bias_correction, "Miller-Madow correction for mc");
    sweep_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp metadata line");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "KL correction term, its bounds and the smoothing error");
    FormatFlags bounds_fmt;
    Output bounds_out;
    std::string bounds_dist, t_grid_text;
    bool per_bin = false;
    bounds_fmt.add(bounds_cmd);
    bounds_out.add(bounds_cmd, "json");
    bounds_cmd->add_option("--dist", bounds_dist, "distribution")->required();
    bounds_cmd->add_option("--t-grid", t_grid_text, "comma-separated t values >= 1 (default 60 log-spaced in [1, 32])");
    bounds_cmd->add_flag("--per-bin", per_bin, "include per-bin terms");

    // mc
    auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo estimate of the quantized entropy");
    FormatFlags mc_fmt;
    Output mc_out;
    std::string mc_dist, mc_cov;
    McConfig mc_cfg;
    mc_fmt.add(mc_cmd);
    mc_out.add(mc_cmd, "json");
    auto* md = mc_cmd->add_option("--dist", mc_dist, "distribution");
    auto* mcv = mc_cmd->add_option("--cov", mc_cov, "zero-mean Gaussian covariance");
    md->excludes(mcv);
    mcv->excludes(md);
    mc_cmd->add_option("--samples", mc_cfg.sample_count, "number of samples")->capture_default_str();
    mc_cmd->add_option("--seed", mc_cfg.seed, "random seed")->capture_default_str();
    mc_cmd->add_flag("--bias-correction", mc_cfg.bias_correction, "Miller-Madow correction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        const auto parsed = app.get_subcommands();
        std::cerr << (parsed.empty() ? app.help() : parsed.back()->help());
        return exit_usage;
    }

    try {
        if (*grid_cmd) {
            write_output(grid_out.path, render(grid_table(grid_fmt.format()), grid_out.format));
        } else if (*entropy_cmd) {
            const auto fmt = entropy_fmt.format();
            json j;
            if (!entropy_cov.empty())
                j = mvg_entropy_json(MultivariateGaussian::parse(entropy_cov), fmt);
            else if (!entropy_dist.empty())
                j = to_json(entropy_report(Distribution::parse(entropy_dist), fmt));
            else
                throw std::invalid_argument("entropy needs --dist or --cov");
            write_output(entropy_out.path, render(j, entropy_out.format));
        } else if (*sweep_cmd) {
            spec.mode = parse_sweep_mode(mode);
            spec.quantities = SweepQuantities::parse(quantities);
            for (const auto& d : sweep_dists) spec.dists.push_back(Distribution::parse(d));
            const auto table = run_sweep(spec, no_timestamp ? "" : utc_timestamp());
            write_output(sweep_out.path, render(table, sweep_out.format));
        } else if (*bounds_cmd) {
            const auto t_grid = t_grid_text.empty() ? default_t_grid() : parse_list(t_grid_text);
            const auto j = bounds_json(Distribution::parse(bounds_dist), bounds_fmt.format(), t_grid, per_bin);
            if (per_bin && bounds_out.format == "csv")
                write_output(bounds_out.path, to_csv(per_bin_table(j)));
            else
                write_output(bounds_out.path, render(j, bounds_out.format));
        } else if (*mc_cmd) {
            const auto fmt = mc_fmt.format();
            json j;
            if (!mc_cov.empty()) {
                const auto g = MultivariateGaussian::parse(mc_cov);
                j = {{"distribution", g.to_string()}, {"format", format_json(fmt)}};
                j["mc"] = to_json(mc_entropy(g, fmt, mc_cfg));
            } else if (!mc_dist.empty()) {
                const auto d = Distribution::parse(mc_dist);
                j = {{"distribution", d.to_string()}, {"format", format_json(fmt)}};
                j["mc"] = to_json(mc_entropy(d, fmt, mc_cfg));
                j["exact_H"] = exact_entropy(d, RepresentableGrid(fmt));
            } else {
                throw std::invalid_argument("mc needs --dist or --cov");
            }
            j["seed"] = mc_cfg.seed;
            write_output(mc_out.path, render(j, mc_out.format));
        }
    } catch (const NumericalError& e) {
        std::cerr << "fpent: numerical failure in " << e.what() << "\n";  // what() starts with the component
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fpent: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "fpent: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "fpent: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "fpent: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
