// Tabulated curve data and file emission for the CLI: fidelity-grid tables,
// lossless CSV (17 significant digits), and self-contained SVG plots whose
// line styles follow the usual dashed/dotted/solid conventions. Grid cells
// where a measure is undefined are stored as NaN and rendered as gaps.

#pragma once

#include <isoent/iso_closed_form.hpp>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>

namespace isoent {

struct DataTable {
    std::vector<std::string> columns;        // columns[0] is the abscissa
    std::vector<std::vector<double>> rows;   // row size == columns size
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline std::string to_csv(const DataTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

inline DataTable parse_csv(std::string_view text) {
    DataTable table;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                cells.emplace_back(line.substr(start));
                break;
            }
            cells.emplace_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (header) {
            table.columns = std::move(cells);
            header = false;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw std::invalid_argument("parse_csv: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw std::invalid_argument("parse_csv: bad number '" + cell +
                                            "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty())
        throw std::invalid_argument("parse_csv: empty input");
    return table;
}

// ---------------------------------------------------------------------------
// Curve requests

struct CurveSeries {
    enum class Kind {
        Csquared,     // C^2(F)
        CsquaredD1,   // dC^2/dF
        CsquaredD2,   // d^2C^2/dF^2
        CF,           // C(F) = sqrt(C^2(F))
        CFD1,
        CFD2,
        Tangle,       // hull curves
        Concurrence,
        Eof,
        Branch,       // C^2_nm(F)
        CBranch       // C_nm(F)
    };
    Kind kind = Kind::Csquared;
    int n = 0;
    int m = 0;
};

struct CurveRequest {
    std::vector<int> dims;
    std::vector<CurveSeries> series;
    double from = 0.0;
    double to = 1.0;
    double step = 1e-3;
};

namespace detail {

inline std::string series_column_name(const CurveSeries& s, int d) {
    char buf[64];
    switch (s.kind) {
        case CurveSeries::Kind::Csquared:
            std::snprintf(buf, sizeof(buf), "C2(d=%d)", d);
            break;
        case CurveSeries::Kind::CsquaredD1:
            std::snprintf(buf, sizeof(buf), "dC2_dF(d=%d)", d);
            break;
        case CurveSeries::Kind::CsquaredD2:
            std::snprintf(buf, sizeof(buf), "d2C2_dF2(d=%d)", d);
            break;
        case CurveSeries::Kind::CF:
            std::snprintf(buf, sizeof(buf), "C(d=%d)", d);
            break;
        case CurveSeries::Kind::CFD1:
            std::snprintf(buf, sizeof(buf), "dC_dF(d=%d)", d);
            break;
        case CurveSeries::Kind::CFD2:
            std::snprintf(buf, sizeof(buf), "d2C_dF2(d=%d)", d);
            break;
        case CurveSeries::Kind::Tangle:
            std::snprintf(buf, sizeof(buf), "tangle(d=%d)", d);
            break;
        case CurveSeries::Kind::Concurrence:
            std::snprintf(buf, sizeof(buf), "concurrence(d=%d)", d);
            break;
        case CurveSeries::Kind::Eof:
            std::snprintf(buf, sizeof(buf), "eof(d=%d)", d);
            break;
        case CurveSeries::Kind::Branch:
            std::snprintf(buf, sizeof(buf), "C2_%d_%d(d=%d)", s.n, s.m, d);
            break;
        case CurveSeries::Kind::CBranch:
            std::snprintf(buf, sizeof(buf), "C_%d_%d(d=%d)", s.n, s.m, d);
            break;
    }
    return std::string(buf);
}

inline double evaluate_series(const CurveSeries& s, int d, double f,
                              const PiecewiseCurve* hull) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        switch (s.kind) {
            case CurveSeries::Kind::Csquared: return csquared(f, d);
            case CurveSeries::Kind::CsquaredD1: return csquared_dF(f, d);
            case CurveSeries::Kind::CsquaredD2: return csquared_d2F(f, d);
            case CurveSeries::Kind::CF:
                return std::sqrt(std::max(0.0, csquared(f, d)));
            case CurveSeries::Kind::CFD1: {
                const double t = csquared(f, d);
                if (t <= 0.0) return nan;
                return csquared_dF(f, d) / (2.0 * std::sqrt(t));
            }
            case CurveSeries::Kind::CFD2: {
                const double t = csquared(f, d);
                if (t <= 0.0) return nan;
                const double t1 = csquared_dF(f, d);
                const double t2 = csquared_d2F(f, d);
                const double c = std::sqrt(t);
                return t2 / (2.0 * c) - t1 * t1 / (4.0 * t * c);
            }
            case CurveSeries::Kind::Tangle:
            case CurveSeries::Kind::Concurrence:
            case CurveSeries::Kind::Eof:
                return (*hull)(f);
            case CurveSeries::Kind::Branch:
                return branch_tangle({s.n, s.m, d}, f);
            case CurveSeries::Kind::CBranch:
                return branch_concurrence({s.n, s.m, d}, f);
        }
    } catch (const std::domain_error&) {
        return nan;
    }
    return nan;
}

}  // namespace detail

/// Evaluates every requested (series, dimension) pair on the fidelity grid.
/// Cells outside a series' domain hold NaN.
inline DataTable build_curve_table(const CurveRequest& request) {
    if (request.dims.empty() || request.series.empty())
        throw std::invalid_argument(
            "build_curve_table: need at least one dimension and one series");
    for (int d : request.dims)
        if (d < 2)
            throw std::invalid_argument(
                "build_curve_table: dimensions must be >= 2");
    if (!(request.step > 0.0) || request.from < 0.0 ||
        request.to > 1.0 + 1e-12 || !(request.from < request.to))
        throw std::invalid_argument(
            "build_curve_table: grid must satisfy 0 <= from < to <= 1, "
            "step > 0");
    for (const CurveSeries& s : request.series) {
        if (s.kind == CurveSeries::Kind::Branch ||
            s.kind == CurveSeries::Kind::CBranch) {
            if (s.n < 1 || s.m < 0)
                throw std::invalid_argument(
                    "build_curve_table: branch needs n >= 1, m >= 0");
            for (int d : request.dims)
                if (s.n + s.m > d)
                    throw std::invalid_argument(
                        "build_curve_table: branch n + m exceeds d");
        }
    }

    DataTable table;
    table.columns.push_back("F");
    // The hull curves are built once per (series, d) pair.
    std::vector<std::unique_ptr<PiecewiseCurve>> hulls;
    std::vector<const PiecewiseCurve*> hull_of_column;
    for (const CurveSeries& s : request.series) {
        for (int d : request.dims) {
            table.columns.push_back(detail::series_column_name(s, d));
            const PiecewiseCurve* hull = nullptr;
            if (s.kind == CurveSeries::Kind::Tangle)
                hull = hulls.emplace_back(
                               std::make_unique<PiecewiseCurve>(tangle_curve(d)))
                           .get();
            else if (s.kind == CurveSeries::Kind::Concurrence)
                hull = hulls.emplace_back(std::make_unique<PiecewiseCurve>(
                                              concurrence_curve(d)))
                           .get();
            else if (s.kind == CurveSeries::Kind::Eof)
                hull = hulls.emplace_back(
                               std::make_unique<PiecewiseCurve>(eof_iso_curve(d)))
                           .get();
            hull_of_column.push_back(hull);
        }
    }

    for (long k = 0;; ++k) {
        const double f = request.from + k * request.step;
        if (f > request.to + 1e-12) break;
        std::vector<double> row;
        row.reserve(table.columns.size());
        row.push_back(std::min(f, request.to));
        std::size_t col = 0;
        for (const CurveSeries& s : request.series)
            for (int d : request.dims)
                row.push_back(detail::evaluate_series(s, d, row[0],
                                                      hull_of_column[col++]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---------------------------------------------------------------------------
// SVG rendering

struct SvgOptions {
    int width = 760;
    int height = 500;
    std::string x_label = "F";
    std::string y_label = "value";
};

/// Renders the table as a self-contained SVG: black polylines distinguished
/// by dash style in series order (solid, dashed, dotted, long-dash,
/// short-dash, dash-dot), with axes, tick labels, and a legend. A pure
/// function of the table, so equal tables give byte-identical output.
inline std::string render_svg(const DataTable& table,
                              const SvgOptions& opt = {}) {
    if (table.columns.size() < 2)
        throw std::invalid_argument("render_svg: no data series");
    static const char* kDash[] = {"",        "8,4", "2,3",
                                  "14,5",    "5,3", "8,3,2,3"};
    const int n_styles = 6;
    const double ml = 64, mr = 16, mt = 16, mb = 48;
    const double pw = opt.width - ml - mr;
    const double ph = opt.height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& row : table.rows) {
        if (std::isfinite(row[0])) {
            xmin = std::min(xmin, row[0]);
            xmax = std::max(xmax, row[0]);
        }
        for (std::size_t c = 1; c < row.size(); ++c)
            if (std::isfinite(row[c])) {
                ymin = std::min(ymin, row[c]);
                ymax = std::max(ymax, row[c]);
            }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin)) {
        xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0;
    }
    if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
    const double pad = (ymax - ymin < 1e-300) ? 1.0 : 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * pw;
    };
    const auto py = [&](double y) {
        return mt + (1.0 - (y - ymin) / (ymax - ymin)) * ph;
    };
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    const auto tick = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) +
           "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" +
           num(pw) + "\" height=\"" + num(ph) + "\"/>\n";
    svg += "</g>\n";

    // ticks
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        svg += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(mt + ph) +
               "\" x2=\"" + num(px(xv)) + "\" y2=\"" + num(mt + ph + 4) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(mt + ph + 16) +
               "\" text-anchor=\"middle\">" + tick(xv) + "</text>\n";
        svg += "<line x1=\"" + num(ml - 4) + "\" y1=\"" + num(py(yv)) +
               "\" x2=\"" + num(ml) + "\" y2=\"" + num(py(yv)) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(ml - 7) + "\" y=\"" + num(py(yv) + 4) +
               "\" text-anchor=\"end\">" + tick(yv) + "</text>\n";
    }
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" +
           num(mt + ph + 34) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           opt.x_label + "</text>\n";
    svg += "<text x=\"14\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
           "14 " +
           num(mt + ph / 2) + ")\">" + opt.y_label + "</text>\n";
    svg += "</g>\n";

    // series polylines, gaps at NaN
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        const char* dash = kDash[(c - 1) % n_styles];
        svg += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
        if (dash[0] != '\0')
            svg += std::string(" stroke-dasharray=\"") + dash + "\"";
        svg += " d=\"";
        bool pen_down = false;
        for (const auto& row : table.rows) {
            if (!std::isfinite(row[0]) || !std::isfinite(row[c])) {
                pen_down = false;
                continue;
            }
            svg += pen_down ? "L" : "M";
            svg += num(px(row[0])) + " " + num(py(row[c])) + " ";
            pen_down = true;
        }
        svg += "\"/>\n";
    }

    // legend
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        const double ly = mt + 14 + 16.0 * (c - 1);
        const char* dash = kDash[(c - 1) % n_styles];
        svg += "<line x1=\"" + num(ml + pw - 150) + "\" y1=\"" + num(ly - 4) +
               "\" x2=\"" + num(ml + pw - 122) + "\" y2=\"" + num(ly - 4) +
               "\" stroke=\"black\" stroke-width=\"1.5\"";
        if (dash[0] != '\0')
            svg += std::string(" stroke-dasharray=\"") + dash + "\"";
        svg += "/>\n";
        svg += "<text x=\"" + num(ml + pw - 116) + "\" y=\"" + num(ly) +
               "\">" + table.columns[c] + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace isoent
