#include "hypermu/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace hypermu {

namespace {

using nlohmann::json;

json base(const char* kind) {
    json j;
    j["schema"] = kReportSchema;
    j["kind"] = kind;
    return j;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_rows(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::string to_json(const IdentityReport& r, bool) {
    json j = base("identities");
    j["mode"] = r.mode;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    json items = json::array();
    for (const auto& it : r.results) {
        items.push_back({{"name", it.name},
                         {"max_residual", it.max_residual},
                         {"samples", it.samples},
                         {"skipped", it.skipped},
                         {"worst_index", it.worst_index}});
    }
    j["identities"] = items;
    return j.dump(2);
}

std::string to_json(const ScanReport& r, bool) {
    json j = base("scan");
    j["target"] = r.target;
    j["sup"] = r.sup;
    j["margin"] = r.margin;
    j["counterexample"] = r.counterexample;
    j["axis_names"] = r.axis_names;
    j["argmax"] = r.argmax;
    j["refined_sup"] = r.refined_sup;
    j["samples"] = r.samples;
    j["skipped"] = r.skipped;
    if (!r.diag_sup.empty()) {
        j["diag_lambda_im"] = r.diag_lambda_im;
        j["diag_sup"] = r.diag_sup;
    }
    if (!r.levels.empty()) {
        json levels = json::array();
        for (const auto& l : r.levels) {
            levels.push_back({{"im_floor", l.im_floor},
                              {"sup", l.sup},
                              {"margin", l.margin},
                              {"mean_nu_spread_top", l.mean_nu_spread_top},
                              {"samples", l.samples}});
        }
        j["levels"] = levels;
    }
    if (!r.cells.empty()) j["cells"] = r.cells;
    return j.dump(2);
}

std::string to_json(const LimitReport& r, bool verbose) {
    json j = base("limit");
    j["path"] = r.path;
    j["limit"] = r.limit;
    j["order_estimate"] = r.order_estimate;
    j["converged"] = r.converged;
    j["diagnostic"] = r.diagnostic;
    j["tracks_phi"] = r.tracks_phi;
    if (r.tracks_phi) j["abs_phi_at_t20"] = r.abs_phi_at_t20;
    if (verbose || r.tail.size() <= 16) j["tail"] = r.tail;
    return j.dump(2);
}

std::string to_json(const EnvelopeReport& r, bool) {
    json j = base("envelope");
    j["p"] = r.p;
    j["fitted_c"] = r.fitted_c;
    j["raw_max"] = r.raw_max;
    j["max_ratio"] = r.max_ratio;
    j["half_max_ratio"] = r.half_max_ratio;
    j["doubling_change"] = r.doubling_change;
    j["samples"] = r.samples;
    j["skipped"] = r.skipped;
    return j.dump(2);
}

std::string to_json(const ProbeReport& r, bool) {
    json j = base("probe");
    j["samples"] = r.samples;
    j["max_isometry_residual"] = r.max_isometry_residual;
    j["max_convexity_violation"] = r.max_convexity_violation;
    j["min_strictness_margin"] = r.min_strictness_margin;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string to_json(const SeriesReport& r, bool) {
    json j = base("series");
    if (!r.meta.empty()) {
        json meta;
        for (const auto& [k, v] : r.meta) meta[k] = v;
        j["config"] = meta;
    }
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["early_stop"] = r.early_stop;
    j["diagnostic"] = r.diagnostic;
    return j.dump(2);
}

std::string to_csv(const IdentityReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& it : r.results)
        rows.push_back({it.name, fmt(it.max_residual), std::to_string(it.samples),
                        std::to_string(it.skipped), std::to_string(it.worst_index)});
    return csv_rows({"identity", "max_residual", "samples", "skipped", "worst_index"}, rows);
}

std::string to_csv(const ScanReport& r) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"sup", fmt(r.sup)});
    rows.push_back({"margin", fmt(r.margin)});
    rows.push_back({"refined_sup", fmt(r.refined_sup)});
    rows.push_back({"counterexample", r.counterexample ? "1" : "0"});
    rows.push_back({"samples", std::to_string(r.samples)});
    rows.push_back({"skipped", std::to_string(r.skipped)});
    for (std::size_t i = 0; i < r.argmax.size(); ++i)
        rows.push_back({"argmax_" + r.axis_names[i], fmt(r.argmax[i])});
    for (std::size_t i = 0; i < r.diag_sup.size(); ++i)
        rows.push_back({"diag_sup_im" + fmt(r.diag_lambda_im[i]), fmt(r.diag_sup[i])});
    for (const auto& l : r.levels) {
        rows.push_back({"level_sup_floor" + fmt(l.im_floor), fmt(l.sup)});
        rows.push_back({"level_nu_spread_floor" + fmt(l.im_floor), fmt(l.mean_nu_spread_top)});
    }
    std::string out = csv_rows({"key", "value"}, rows);
    if (!r.cells.empty()) {
        out += "\n";
        std::string header;
        for (const auto& name : r.axis_names) header += name + ",";
        out += header + "value\n";
        for (const auto& cell : r.cells) {
            std::string row;
            for (std::size_t i = 0; i < cell.size(); ++i) {
                if (i) row += ',';
                row += fmt(cell[i]);
            }
            out += row + "\n";
        }
    }
    return out;
}

std::string to_csv(const LimitReport& r) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"path", r.path});
    rows.push_back({"limit", fmt(r.limit)});
    rows.push_back({"order_estimate", fmt(r.order_estimate)});
    rows.push_back({"converged", r.converged ? "1" : "0"});
    if (r.tracks_phi) rows.push_back({"abs_phi_at_t20", fmt(r.abs_phi_at_t20)});
    return csv_rows({"key", "value"}, rows);
}

std::string to_csv(const EnvelopeReport& r) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"p", fmt(r.p)});
    rows.push_back({"fitted_c", fmt(r.fitted_c)});
    rows.push_back({"raw_max", fmt(r.raw_max)});
    rows.push_back({"max_ratio", fmt(r.max_ratio)});
    rows.push_back({"half_max_ratio", fmt(r.half_max_ratio)});
    rows.push_back({"doubling_change", fmt(r.doubling_change)});
    rows.push_back({"samples", std::to_string(r.samples)});
    rows.push_back({"skipped", std::to_string(r.skipped)});
    return csv_rows({"key", "value"}, rows);
}

std::string to_csv(const ProbeReport& r) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"samples", std::to_string(r.samples)});
    rows.push_back({"max_isometry_residual", fmt(r.max_isometry_residual)});
    rows.push_back({"max_convexity_violation", fmt(r.max_convexity_violation)});
    rows.push_back({"min_strictness_margin", fmt(r.min_strictness_margin)});
    rows.push_back({"pass", r.pass ? "1" : "0"});
    return csv_rows({"key", "value"}, rows);
}

std::string to_csv(const SeriesReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& raw : r.rows) {
        std::vector<std::string> row;
        row.reserve(raw.size());
        for (double v : raw) row.push_back(fmt(v));
        rows.push_back(std::move(row));
    }
    return csv_rows(r.columns, rows);
}

} // namespace hypermu
