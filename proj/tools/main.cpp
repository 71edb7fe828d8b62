// Command-line front end: tabulate measure curves as CSV/SVG, run the
// verification suites, and evaluate all measures at a single (d, F) point.
//
// Exit status: 0 on success, 1 when a verification check fails, 2 on usage
// errors (bad flags, grids, or measure names).

#include <isoent/isoent.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace isoent;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    for (const std::string& part : split(text, ',')) {
        try {
            dims.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw UsageError("bad dimension '" + part + "'");
        }
    }
    return dims;
}

std::pair<int, int> parse_branch_suffix(const std::string& token,
                                        std::size_t colon) {
    const std::vector<std::string> nm =
        split(token.substr(colon + 1), ',');
    if (nm.size() != 2)
        throw UsageError("branch measure needs the form branch:N,M");
    try {
        return {std::stoi(nm[0]), std::stoi(nm[1])};
    } catch (const std::exception&) {
        throw UsageError("bad branch indices in '" + token + "'");
    }
}

// Expands measure tokens (and the --derivative list) into column series.
std::vector<CurveSeries> parse_measures(
    const std::vector<std::string>& tokens,
    const std::vector<int>& derivative_orders) {
    std::vector<CurveSeries> series;
    bool differentiable_seen = false;
    for (const std::string& token : tokens) {
        if (token == "csquared") {
            differentiable_seen = true;
            series.push_back({CurveSeries::Kind::Csquared, 0, 0});
            for (int order : derivative_orders)
                series.push_back({order == 1 ? CurveSeries::Kind::CsquaredD1
                                             : CurveSeries::Kind::CsquaredD2,
                                  0, 0});
        } else if (token == "cf") {
            differentiable_seen = true;
            series.push_back({CurveSeries::Kind::CF, 0, 0});
            for (int order : derivative_orders)
                series.push_back({order == 1 ? CurveSeries::Kind::CFD1
                                             : CurveSeries::Kind::CFD2,
                                  0, 0});
        } else if (token == "tangle") {
            series.push_back({CurveSeries::Kind::Tangle, 0, 0});
        } else if (token == "concurrence") {
            series.push_back({CurveSeries::Kind::Concurrence, 0, 0});
        } else if (token == "eof") {
            series.push_back({CurveSeries::Kind::Eof, 0, 0});
        } else if (token.rfind("branch:", 0) == 0) {
            const auto [n, m] = parse_branch_suffix(token, 6);
            series.push_back({CurveSeries::Kind::Branch, n, m});
        } else if (token.rfind("cbranch:", 0) == 0) {
            const auto [n, m] = parse_branch_suffix(token, 7);
            series.push_back({CurveSeries::Kind::CBranch, n, m});
        } else {
            throw UsageError("unknown measure '" + token + "'");
        }
    }
    if (!derivative_orders.empty() && !differentiable_seen)
        throw UsageError(
            "--derivative applies only to the csquared and cf measures");
    return series;
}

std::vector<int> parse_derivative_orders(const std::string& text) {
    std::vector<int> orders;
    if (text.empty()) return orders;
    for (const std::string& part : split(text, ',')) {
        if (part == "1")
            orders.push_back(1);
        else if (part == "2")
            orders.push_back(2);
        else
            throw UsageError("derivative order must be 1 or 2");
    }
    return orders;
}

// Plain key=value configuration file; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> config;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto notspace = [](unsigned char c) {
                return !std::isspace(c);
            };
            s.erase(s.begin(),
                    std::find_if(s.begin(), s.end(), notspace));
            s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(),
                    s.end());
            return s;
        };
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (!strip(line).empty())
                throw UsageError("bad config line: " + line);
            continue;
        }
        config[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return config;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + out_path + "'");
    out << text;
}

const char* segment_kind_name(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Zero: return "zero";
        case SegmentKind::ClosedForm: return "closed-form";
        case SegmentKind::Linear: return "linear";
    }
    return "?";
}

const CurveSegment& active_segment(const PiecewiseCurve& curve, double f) {
    for (const CurveSegment& s : curve.segments())
        if (f <= s.f_hi) return s;
    return curve.segments().back();
}

int run_point(int d, double f) {
    if (d < 2) throw UsageError("point: dimension must be >= 2");
    if (f < 0.0 || f > 1.0) throw UsageError("point: F must lie in [0, 1]");
    const PiecewiseCurve tangle = tangle_curve(d);
    const PiecewiseCurve conc = concurrence_curve(d);
    const PiecewiseCurve eof = eof_iso_curve(d);
    std::cout << "d = " << d << "\n";
    std::cout << "F = " << format_double(f) << "\n";
    std::cout << "separable = "
              << (is_isotropic_separable(d, f) ? "true" : "false") << "\n";
    const auto print = [&](const char* name, const PiecewiseCurve& curve) {
        std::cout << name << " = " << format_double(curve(f)) << " ("
                  << segment_kind_name(active_segment(curve, f).kind)
                  << " segment)\n";
    };
    print("tangle", tangle);
    print("concurrence", conc);
    print("eof", eof);
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
    VerifyReport report;
    if (suite == "closed-form")
        report = verify_closed_form();
    else if (suite == "oracle")
        report = verify_oracle(seed);
    else if (suite == "roof")
        report = verify_roof(seed);
    else if (suite == "all")
        report = verify_all(seed);
    else
        throw UsageError("unknown suite '" + suite +
                         "' (expected closed-form, oracle, roof, or all)");
    std::cout << format_report(report);
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "isoent: tangle, I-concurrence, and entanglement of formation of "
        "isotropic states"};
    app.require_subcommand(1);

    CLI::App* curve = app.add_subcommand(
        "curve", "Tabulate measure curves on a fidelity grid (CSV or SVG)");
    std::string dims_text = "3";
    std::vector<std::string> measure_tokens;
    double from = 0.0, to = 1.0, step = 1e-3;
    std::string derivative_text;
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    curve->add_option("--d", dims_text,
                      "Dimension or comma-separated list (default 3)");
    curve->add_option("--measures", measure_tokens,
                      "Measures: csquared, cf, tangle, concurrence, eof, "
                      "branch:N,M, cbranch:N,M")
        ->expected(-1);
    curve->add_option("--from", from, "Grid start (default 0)");
    curve->add_option("--to", to, "Grid end (default 1)");
    curve->add_option("--step", step, "Grid step (default 1e-3)");
    curve->add_option("--derivative", derivative_text,
                      "Derivative orders (1, 2, or 1,2) for csquared/cf");
    curve->add_option("--format", format, "Output format: csv or svg");
    curve->add_option("--out", out_path, "Output path (default stdout)");
    curve->add_option("--config", config_path,
                      "key=value config file; flags override it");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run a verification suite and print a check table");
    std::string suite = "all";
    std::uint64_t seed = 7;
    verify->add_option("suite", suite,
                       "Suite: closed-form, oracle, roof, or all");
    verify->add_option("--seed", seed, "Seed for the stochastic suites");
    verify->add_option("--config", config_path,
                       "key=value config file; flags override it");

    CLI::App* point = app.add_subcommand(
        "point", "Print all measures of the isotropic state at (d, F)");
    int point_d = 3;
    double point_f = 1.0;
    point->add_option("--d", point_d, "Dimension");
    point->add_option("--F", point_f, "Fidelity in [0, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            const auto config = read_config(config_path);
            const auto apply = [&](const char* key, auto& value,
                                   const CLI::App* cmd, const char* flag) {
                const auto it = config.find(key);
                if (it == config.end() || cmd->count(flag) > 0) return;
                std::istringstream stream(it->second);
                stream >> value;
                if (stream.fail())
                    throw UsageError(std::string("bad config value for ") +
                                     key);
            };
            apply("from", from, curve, "--from");
            apply("to", to, curve, "--to");
            apply("step", step, curve, "--step");
            apply("d", dims_text, curve, "--d");
            apply("format", format, curve, "--format");
            apply("seed", seed, verify, "--seed");
        }

        if (curve->parsed()) {
            if (measure_tokens.empty()) measure_tokens = {"tangle"};
            if (format != "csv" && format != "svg")
                throw UsageError("format must be csv or svg");
            CurveRequest request;
            request.dims = parse_dims(dims_text);
            request.series = parse_measures(
                measure_tokens, parse_derivative_orders(derivative_text));
            request.from = from;
            request.to = to;
            request.step = step;
            const DataTable table = build_curve_table(request);
            write_output(format == "csv" ? to_csv(table) : render_svg(table),
                         out_path);
            return 0;
        }
        if (verify->parsed()) return run_verify(suite, seed);
        if (point->parsed()) return run_point(point_d, point_f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
