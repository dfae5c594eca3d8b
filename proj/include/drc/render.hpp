#pragma once

#include "drc/chase.hpp"

#include <string>
#include <string_view>

namespace drc {

enum class Format { Text, Structured };
std::optional<Format> parse_format(std::string_view s);

// A null printed as ∗: one cell, no condition.
bool is_dont_care(const CInstance& i, const Null& n);

// Per-relation tables followed by the global condition.
std::string render_text(const CInstance& i);
// {tables, condition, condition_atoms, size, coverage, leaf_legend} as JSON.
std::string render_structured(const CInstance& i, const Coverage& coverage, const Query* q = nullptr,
                              const SyntaxTree* t = nullptr);
std::string render_instance(const CInstance& i, std::string_view format);  // throws Error on unknown format

// Inverse of render_structured up to null numbering; `tracked` takes the coverage field.
CInstance load_structured_instance(SchemaPtr schema, std::string_view text);
// {tables: {rel: [[const,…],…]}} typed by the schema's domains.
GroundInstance load_ground_instance(SchemaPtr schema, std::string_view text);

struct ReportOptions {
    Format format = Format::Text;
    bool stats = false;
    std::string title;  // e.g. the difference being characterized
};
std::string render_report(const Query& q, const SyntaxTree& t, const ChaseConfig& cfg, const ChaseResult& r,
                          const ReportOptions& opts);

}  // namespace drc
