#include "drc/cinstance.hpp"

#include <algorithm>
#include <map>

namespace drc {

namespace {

// Colour refinement over nulls followed by individualization; the key is the
// lexicographically smallest serialization over the search tree's leaves.
class Canonizer {
public:
    Canonizer(const CInstance& i, const std::vector<Null>& pinned) : i_(i) {
        nulls_ = i.nulls();
        for (std::size_t k = 0; k < nulls_.size(); ++k) index_[nulls_[k]] = static_cast<int>(k);
        std::vector<std::string> init(nulls_.size());
        for (std::size_t k = 0; k < nulls_.size(); ++k) {
            const Null& n = nulls_[k];
            bool pin = std::find(pinned.begin(), pinned.end(), n) != pinned.end();
            init[k] = std::to_string(n.domain) + (pin ? "!" + i.null_name(n) : std::string());
            pinned_.push_back(pin);
        }
        colors_ = rank(init);
    }

    std::string run() {
        best_.clear();
        search(refine(colors_));
        return best_;
    }

private:
    const CInstance& i_;
    std::vector<Null> nulls_;
    std::map<Null, int> index_;
    std::vector<int> colors_;
    std::vector<bool> pinned_;
    std::string best_;

    static std::vector<int> rank(const std::vector<std::string>& labels) {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(labels.size());
        for (std::size_t k = 0; k < labels.size(); ++k)
            out[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), labels[k]) - sorted.begin());
        return out;
    }

    std::string cell(const Value& v, const std::vector<int>& col) const {
        if (!v.is_null()) return "c" + v.constant().literal();
        return "n" + std::to_string(col[index_.at(v.null())]);
    }

    std::string cond_shape(const Condition& c, const std::vector<int>& col) const {
        if (c.is_fact) {
            std::string s = "F" + std::to_string(c.rel) + "(";
            for (const auto& v : c.args) s += cell(v, col) + ",";
            return s + ")";
        }
        std::string l = cell(c.lhs, col), r = cell(c.rhs, col);
        if ((c.op == CmpOp::Eq || c.op == CmpOp::Ne) && r < l) std::swap(l, r);
        return "C" + std::to_string(static_cast<int>(c.op)) + (c.negated ? "!" : "") + l + "," + r;
    }

    std::vector<int> refine(std::vector<int> col) const {
        std::size_t classes = count(col);
        for (;;) {
            std::vector<std::vector<std::string>> occ(nulls_.size());
            for (std::size_t r = 0; r < i_.tables.size(); ++r)
                for (const auto& t : i_.tables[r]) {
                    std::string shape = "T" + std::to_string(r) + "(";
                    for (const auto& v : t.cells) shape += cell(v, col) + ",";
                    shape += ")";
                    for (std::size_t p = 0; p < t.cells.size(); ++p)
                        if (t.cells[p].is_null()) occ[index_.at(t.cells[p].null())].push_back(std::to_string(p) + shape);
                }
            for (const auto& c : i_.conditions) {
                std::string shape = cond_shape(c, col);
                auto mark = [&](const Value& v, const std::string& role) {
                    if (v.is_null()) occ[index_.at(v.null())].push_back(role + shape);
                };
                if (c.is_fact)
                    for (std::size_t p = 0; p < c.args.size(); ++p) mark(c.args[p], std::to_string(p));
                else {
                    bool sym = c.op == CmpOp::Eq || c.op == CmpOp::Ne;
                    mark(c.lhs, sym ? "s" : "l");
                    mark(c.rhs, sym ? "s" : "r");
                }
            }
            std::vector<std::string> labels(nulls_.size());
            for (std::size_t k = 0; k < nulls_.size(); ++k) {
                std::sort(occ[k].begin(), occ[k].end());
                std::string l = std::to_string(col[k]) + "|";
                for (const auto& o : occ[k]) l += o + ";";
                labels[k] = l;
            }
            auto next = rank(labels);
            std::size_t n = count(next);
            col = std::move(next);
            if (n == classes) return col;
            classes = n;
        }
    }

    static std::size_t count(const std::vector<int>& col) {
        std::vector<int> s = col;
        std::sort(s.begin(), s.end());
        return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
    }

    void search(const std::vector<int>& col) {
        // First colour class with more than one member.
        std::map<int, std::vector<int>> cls;
        for (std::size_t k = 0; k < col.size(); ++k) cls[col[k]].push_back(static_cast<int>(k));
        const std::vector<int>* target = nullptr;
        for (const auto& [c, mem] : cls)
            if (mem.size() > 1) {
                target = &mem;
                break;
            }
        if (!target) {
            std::string s = serialize(col);
            if (best_.empty() || s < best_) best_ = s;
            return;
        }
        for (int k : *target) {
            std::vector<int> next(col.size());
            // Individualize k: it precedes the rest of its class.
            for (std::size_t j = 0; j < col.size(); ++j) next[j] = col[j] * 2 + ((col[j] == col[k] && static_cast<int>(j) != k) ? 1 : 0);
            search(refine(next));
        }
    }

    std::string serialize(const std::vector<int>& col) const {
        std::vector<int> order(nulls_.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return col[a] < col[b]; });
        std::vector<std::string> name(nulls_.size());
        std::map<int, int> per_domain;
        for (int k : order) {
            const Null& n = nulls_[k];
            name[k] = pinned_[k] ? "!" + i_.null_name(n)
                                 : i_.schema->domains[n.domain].name + "#" + std::to_string(++per_domain[n.domain]);
        }
        auto val = [&](const Value& v) { return v.is_null() ? name[index_.at(v.null())] : v.constant().literal(); };
        std::string out;
        std::vector<std::pair<std::string, int>> rels;
        for (std::size_t r = 0; r < i_.tables.size(); ++r) rels.push_back({i_.schema->relations[r].name, static_cast<int>(r)});
        std::sort(rels.begin(), rels.end());
        for (const auto& [rname, r] : rels) {
            std::vector<std::string> rows;
            for (const auto& t : i_.tables[r]) {
                std::string row = "(";
                for (const auto& v : t.cells) row += val(v) + ",";
                rows.push_back(row + ")");
            }
            std::sort(rows.begin(), rows.end());
            out += rname + ":";
            for (const auto& row : rows) out += row;
            out += "\n";
        }
        std::vector<std::string> conds;
        for (const auto& c : i_.conditions) {
            if (c.is_fact) {
                std::string s = "¬" + i_.schema->relations[c.rel].name + "(";
                for (const auto& v : c.args) s += val(v) + ",";
                conds.push_back(s + ")");
                continue;
            }
            std::string l = val(c.lhs), r = val(c.rhs);
            if ((c.op == CmpOp::Eq || c.op == CmpOp::Ne) && r < l) std::swap(l, r);
            conds.push_back((c.negated ? "!" : "") + l + " " + std::string(op_text(c.op)) + " " + r);
        }
        std::sort(conds.begin(), conds.end());
        conds.erase(std::unique(conds.begin(), conds.end()), conds.end());
        out += "φ:";
        for (const auto& c : conds) out += c + ";";
        return out;
    }
};

}  // namespace

std::string canonical_key(const CInstance& i, const std::vector<Null>& pinned) {
    return Canonizer(i, pinned).run();
}

std::string exact_key(const CInstance& i) {
    std::string out;
    for (std::size_t r = 0; r < i.tables.size(); ++r) {
        out += std::to_string(r) + ":";
        for (const auto& t : i.tables[r]) {
            out += t.core ? "(" : "[";
            for (const auto& v : t.cells) out += i.value_text(v) + ",";
            out += ")";
        }
        out += "\n";
    }
    for (const auto& c : i.conditions) out += i.condition_text(c) + ";";
    out += "\n#";
    for (int c : i.counters) out += std::to_string(c) + ",";
    return out;
}

}  // namespace drc
