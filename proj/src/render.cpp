#include "drc/render.hpp"

#include <algorithm>
#include <cstdio>

namespace drc {

std::optional<Format> parse_format(std::string_view s) {
    if (s == "text") return Format::Text;
    if (s == "structured") return Format::Structured;
    return std::nullopt;
}

bool is_dont_care(const CInstance& i, const Null& n) {
    int cells = 0;
    for (const auto& tab : i.tables)
        for (const auto& t : tab)
            for (const auto& v : t.cells)
                if (v.is_null() && v.null() == n) ++cells;
    if (cells != 1) return false;
    for (const auto& c : i.conditions) {
        auto hit = [&](const Value& v) { return v.is_null() && v.null() == n; };
        if (hit(c.lhs) || hit(c.rhs) || std::any_of(c.args.begin(), c.args.end(), hit)) return false;
    }
    return true;
}

namespace {

std::size_t width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, width(s)), ' '); }

}  // namespace

std::string render_text(const CInstance& i) {
    const Schema& s = *i.schema;
    std::string out;
    for (std::size_t r = 0; r < s.relations.size(); ++r) {
        const auto& rel = s.relations[r];
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> head;
        for (const auto& a : rel.attrs) head.push_back(a.name);
        rows.push_back(head);
        for (const auto& t : i.tables[r]) {
            std::vector<std::string> row;
            for (const auto& v : t.cells)
                row.push_back(v.is_null() && is_dont_care(i, v.null()) ? "∗" : v.is_null() ? i.null_name(v.null()) : v.constant().to_string());
            rows.push_back(row);
        }
        std::vector<std::size_t> w(head.size(), 0);
        for (const auto& row : rows)
            for (std::size_t k = 0; k < row.size(); ++k) w[k] = std::max(w[k], width(row[k]));
        out += rel.name + "\n";
        for (std::size_t n = 0; n < rows.size(); ++n) {
            std::string line = "  ";
            for (std::size_t k = 0; k < rows[n].size(); ++k) line += (k ? " | " : "") + pad(rows[n][k], w[k]);
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out += line + "\n";
            if (n == 0) {
                std::string rule = "  ";
                for (std::size_t k = 0; k < w.size(); ++k) rule += (k ? "-+-" : "") + std::string(w[k], '-');
                out += rule + "\n";
            }
        }
        if (rows.size() == 1) out += "  (empty)\n";
    }
    out += "Global condition\n  ";
    if (i.conditions.empty()) out += "true";
    for (std::size_t k = 0; k < i.conditions.size(); ++k) out += (k ? " ∧ " : "") + i.condition_text(i.conditions[k]);
    out += "\n";
    return out;
}

std::string render_instance(const CInstance& i, std::string_view format) {
    auto f = parse_format(format);
    if (!f) throw Error("unknown format '" + std::string(format) + "'");
    return *f == Format::Text ? render_text(i) : render_structured(i, i.tracked);
}

namespace {

std::string seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

}  // namespace

std::string render_report(const Query& q, const SyntaxTree& t, const ChaseConfig& cfg, const ChaseResult& r,
                          const ReportOptions& opts) {
    if (opts.format == Format::Structured) {
        std::string out = "{\n  \"variant\": \"" + std::string(variant_name(cfg.variant)) + "\",\n  \"limit\": " +
                          std::to_string(cfg.limit) + ",\n  \"timed_out\": " + (r.stats.timed_out ? "true" : "false") +
                          ",\n  \"instances\": [";
        for (std::size_t k = 0; k < r.solution.size(); ++k) {
            std::string doc = render_structured(r.solution[k].instance, r.solution[k].coverage, &q, &t);
            std::string indented;
            for (char c : doc) {
                indented += c;
                if (c == '\n') indented += "    ";
            }
            out += (k ? ",\n    " : "\n    ") + indented;
        }
        out += r.solution.empty() ? "]" : "\n  ]";
        if (opts.stats)
            out += ",\n  \"stats\": {\"explored\": " + std::to_string(r.stats.explored) +
                   ", \"distinct_keys\": " + std::to_string(r.stats.distinct_keys) +
                   ", \"queue_peak\": " + std::to_string(r.stats.queue_peak) +
                   ", \"searches\": " + std::to_string(r.stats.searches) +
                   ", \"emitted\": " + std::to_string(r.raw.size()) + "}";
        return out + "\n}\n";
    }
    std::string out;
    if (!opts.title.empty()) out += opts.title + "\n";
    out += "query: " + query_text(q) + "\n";
    out += "variant: " + std::string(variant_name(cfg.variant)) + "  limit: " + std::to_string(cfg.limit) + "\n";
    out += "leaves:\n";
    for (int k = 0; k < t.leaf_count(); ++k) out += "  [" + std::to_string(k) + "] " + atom_text(q, t.leaves[k]) + "\n";
    out += "minimal c-solution: " + std::to_string(r.solution.size()) + " instance(s)" +
           (r.stats.timed_out ? " (partial: timed out)" : "") + "\n";
    for (std::size_t k = 0; k < r.solution.size(); ++k) {
        const auto& e = r.solution[k];
        out += "\n== instance " + std::to_string(k + 1) + "  size " + std::to_string(e.instance.size()) +
               "  coverage " + coverage_text(e.coverage) + "\n";
        out += render_text(e.instance);
    }
    if (opts.stats) {
        out += "\nstats: explored=" + std::to_string(r.stats.explored) + " distinct_keys=" +
               std::to_string(r.stats.distinct_keys) + " queue_peak=" + std::to_string(r.stats.queue_peak) +
               " searches=" + std::to_string(r.stats.searches) + " emitted=" + std::to_string(r.raw.size()) +
               " wall=" + seconds(r.stats.wall_seconds) + "s\n";
    }
    return out;
}

}  // namespace drc
