#include "drc/render.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

// A bare name such as "beers" resolves to a shipped fixture.
std::string resolve(const std::string& path, const char* ext) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    fs::path shipped = fs::path(DRC_FIXTURE_DIR) / (path + ext);
    if (fs::exists(shipped)) return shipped.string();
    shipped = fs::path(DRC_FIXTURE_DIR) / path;
    if (fs::exists(shipped)) return shipped.string();
    return path;
}

struct Inputs {
    std::string schema = "beers";
    std::string query, query1, query2;
};

drc::SchemaPtr load_schema(const Inputs& in) { return drc::load_schema_file(resolve(in.schema, ".json")); }

drc::Query load_query(const std::string& path, const drc::SchemaPtr& schema) {
    return drc::parse_query_file(resolve(path, ".drc"), schema);
}

// The query to work on: a single query, or the difference of two.
std::vector<std::pair<std::string, drc::Query>> targets(const Inputs& in, const drc::SchemaPtr& schema, bool both) {
    std::vector<std::pair<std::string, drc::Query>> out;
    if (!in.query.empty()) {
        out.emplace_back("", drc::normalize_query(load_query(in.query, schema)));
        return out;
    }
    if (in.query1.empty() || in.query2.empty()) throw CLI::ValidationError("give --query, or both --query1 and --query2");
    drc::Query q1 = load_query(in.query1, schema), q2 = load_query(in.query2, schema);
    out.emplace_back("difference: " + in.query1 + " - " + in.query2, drc::difference_query(q1, q2));
    if (both) out.emplace_back("difference: " + in.query2 + " - " + in.query1, drc::difference_query(q2, q1));
    return out;
}

void add_inputs(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--schema", in.schema, "schema document or shipped fixture name");
    cmd->add_option("--query", in.query, "query file");
    cmd->add_option("--query1", in.query1, "first query of a difference");
    cmd->add_option("--query2", in.query2, "second query of a difference");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characterize relational calculus queries by conditional instances"};
    app.require_subcommand(1);

    Inputs in;
    bool both = false, stats = false, first_instance = false;
    std::string variant = "disj-add", format = "text", instance;
    int limit = -1;
    double timeout = 0;

    auto* characterize = app.add_subcommand("characterize", "chase for a minimal c-solution");
    add_inputs(characterize, in);
    characterize->add_flag("--both", both, "also characterize query2 - query1");
    characterize->add_option("--variant", variant, "disj-naive, disj-eo, disj-add, conj-naive, conj-eo or conj-add");
    characterize->add_option("--limit", limit, "bound on query tuples plus conditions (default: twice the leaves)");
    characterize->add_option("--timeout", timeout, "wall-clock budget in seconds");
    characterize->add_option("--format", format, "text or structured");
    characterize->add_flag("--stats", stats, "print search statistics");
    characterize->add_flag("--first-instance", first_instance, "stream instances as they are found");

    auto* metrics = app.add_subcommand("metrics", "syntax-tree complexity of a query");
    add_inputs(metrics, in);

    bool coverage = false;
    auto* eval = app.add_subcommand("eval", "evaluate a query on a ground instance");
    add_inputs(eval, in);
    eval->add_option("--instance", instance, "ground instance document")->required();
    eval->add_flag("--coverage", coverage, "also print the covered leaves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        drc::SchemaPtr schema = load_schema(in);
        if (metrics->parsed()) {
            for (const auto& [title, q] : targets(in, schema, false)) {
                drc::SyntaxTree t = drc::build_syntax_tree(q);
                std::cout << drc::metrics_text(drc::complexity_metrics(t.root)) << "\n";
            }
            return 0;
        }
        if (eval->parsed()) {
            drc::GroundInstance k = drc::load_ground_instance(schema, drc::read_file(resolve(instance, ".json")));
            for (const auto& [title, q] : targets(in, schema, false)) {
                for (const auto& row : drc::eval_ground(q, k)) {
                    std::string line;
                    for (std::size_t c = 0; c < row.size(); ++c) line += (c ? ", " : "") + row[c].to_string();
                    std::cout << line << "\n";
                }
                if (coverage) std::cout << "coverage " << drc::coverage_text(drc::cov_ground(q, k)) << "\n";
            }
            return 0;
        }

        auto v = drc::parse_variant(variant);
        if (!v) throw CLI::ValidationError("--variant", "unknown variant '" + variant + "'");
        auto f = drc::parse_format(format);
        if (!f) throw CLI::ValidationError("--format", "unknown format '" + format + "'");
        for (const auto& [title, q] : targets(in, schema, both)) {
            auto safety = drc::check_safety(q);
            if (!safety.ok) {
                std::string vars;
                for (const auto& s : safety.offending) vars += " " + s;
                throw drc::Error("unsafe query; offending variables:" + vars);
            }
            drc::SyntaxTree t = drc::build_syntax_tree(q);
            drc::ChaseConfig cfg;
            cfg.variant = *v;
            cfg.limit = limit >= 0 ? limit : drc::default_limit(t);
            cfg.timeout = timeout;
            long streamed = 0;
            if (first_instance)
                cfg.on_emit = [&](const drc::CInstance& i) {
                    std::cout << "-- found instance " << ++streamed << " (size " << i.size() << ")\n"
                              << drc::render_text(i) << std::flush;
                };
            drc::ChaseResult r = drc::characterize(q, cfg);
            if (first_instance)
                std::cout << "-- " << streamed << " streamed, " << r.solution.size()
                          << " kept after minimality; streamed instances may be superseded\n";
            drc::ReportOptions opts;
            opts.format = *f;
            opts.stats = stats;
            opts.title = title;
            std::cout << drc::render_report(q, t, cfg, r, opts);
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const drc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
