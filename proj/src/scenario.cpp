#include "ssmax/scenario.hpp"

#include "ssmax/errors.hpp"
#include "ssmax/protocol.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

namespace ssmax {

using nlohmann::json;

namespace {

const std::set<std::string> kMembers{"name",     "nodes",     "edges", "root", "neighbor_order",      "metric",
                                     "byzantine", "strategy", "daemon", "seed", "D", "max_steps",
                                     "containment_horizon", "init"};

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw ValidationError(path, message); }

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::size_t natural(const json& node, const std::string& path) {
    if (!node.is_number_integer() || node.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
    return node.get<std::size_t>();
}

std::string scalar_text(const json& node, const std::string& path) {
    if (node.is_string()) return node.get<std::string>();
    if (node.is_number()) return node.dump();
    fail(path, "expected a number or a string");
}

class NodeIndex {
public:
    explicit NodeIndex(const std::vector<std::string>& labels) {
        for (std::size_t i = 0; i < labels.size(); ++i) index_.emplace(labels[i], ProcessId{i});
    }

    ProcessId resolve(const json& node, const std::string& path) const {
        std::string key;
        if (node.is_string()) key = node.get<std::string>();
        else if (node.is_number_integer()) key = node.dump();
        else fail(path, "expected a node label or id");
        auto it = index_.find(key);
        if (it == index_.end()) fail(path, "unknown node '" + key + "'");
        return it->second;
    }

private:
    std::map<std::string, ProcessId> index_;
};

json reference(const std::string& label) {
    const bool numeric = !label.empty() && std::all_of(label.begin(), label.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (numeric && label.size() < 10 && (label == "0" || label[0] != '0')) return std::stoll(label);
    return label;
}

json weight_json(const MetricSpace& ms, const Weight& w) {
    if (dynamic_cast<const TableMetric*>(&ms) == nullptr && w.value.denominator() == 1) return w.value.numerator();
    return ms.format_weight(w);
}

json value_json(const MetricSpace& ms, const MetricValue& m) {
    if (dynamic_cast<const TableMetric*>(&ms) == nullptr && m.value.denominator() == 1) return m.value.numerator();
    return ms.format_value(m);
}

std::vector<std::string> string_list(const json& node, const std::string& path) {
    if (!node.is_array() || node.empty()) fail(path, "expected a nonempty list");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(scalar_text(node[i], index_path(path, i)));
    return out;
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

EngineOptions Scenario::engine_options() const {
    EngineOptions o;
    o.daemon = daemon;
    o.fairness_bound = fairness_bound;
    o.strategy = strategy;
    o.seed = seed;
    o.horizon = horizon;
    return o;
}

MetricPtr parse_metric(const json& node, const std::string& path) {
    if (node.is_string()) {
        try {
            return make_builtin_metric(node.get<std::string>());
        } catch (const DomainError& e) {
            fail(path, e.what());
        }
    }
    if (!node.is_object()) fail(path, "expected a metric name or an inline table");
    for (const auto& [key, _] : node.items())
        if (key != "values" && key != "weights" && key != "table" && key != "root")
            fail(path + "." + key, "unknown member");
    for (const char* key : {"values", "weights", "table", "root"})
        if (!node.contains(key)) fail(path + "." + key, "missing member");
    auto values = string_list(node["values"], path + ".values");
    auto weights = string_list(node["weights"], path + ".weights");
    const auto& rows = node["table"];
    if (!rows.is_array()) fail(path + ".table", "expected a list of rows");
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) table.push_back(string_list(rows[i], path + ".table" + "[" + std::to_string(i) + "]"));
    try {
        return std::make_shared<TableMetric>(std::move(values), std::move(weights), std::move(table),
                                             scalar_text(node["root"], path + ".root"));
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

json metric_to_json(const MetricSpace& ms) {
    if (const auto* table = dynamic_cast<const TableMetric*>(&ms)) {
        json rows = json::array();
        for (std::size_t i = 0; i < table->value_labels().size(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < table->weight_labels().size(); ++j) row.push_back(table->table_entry(i, j));
            rows.push_back(row);
        }
        return json{{"values", table->value_labels()},
                    {"weights", table->weight_labels()},
                    {"table", rows},
                    {"root", table->value_labels().back()}};
    }
    return ms.name();
}

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) fail("", "a scenario must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!kMembers.count(key)) fail(key, "unknown member");
    for (const char* key : {"nodes", "edges", "root", "metric"})
        if (!doc.contains(key)) fail(key, "missing member");

    Scenario s;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail("name", "expected a string");
        s.name = doc["name"].get<std::string>();
    }

    const auto& nodes = doc["nodes"];
    if (nodes.is_number_integer()) {
        const auto n = natural(nodes, "nodes");
        if (n == 0) fail("nodes", "at least one node is required");
        s.labels = default_labels(n);
    } else if (nodes.is_array()) {
        if (nodes.empty()) fail("nodes", "at least one node is required");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto p = index_path("nodes", i);
            if (!nodes[i].is_string() && !nodes[i].is_number_integer()) fail(p, "expected a label or an integer id");
            auto label = nodes[i].is_string() ? nodes[i].get<std::string>() : nodes[i].dump();
            if (!seen.insert(label).second) fail(p, "duplicate node '" + label + "'");
            s.labels.push_back(std::move(label));
        }
    } else {
        fail("nodes", "expected a count or a list of labels");
    }
    const std::size_t n = s.labels.size();
    const NodeIndex index(s.labels);

    s.metric = parse_metric(doc["metric"]);
    const auto& ms = *s.metric;
    const ProcessId root = index.resolve(doc["root"], "root");

    const auto& edges = doc["edges"];
    if (!edges.is_array()) fail("edges", "expected a list of [u, v, weight] triples");
    std::vector<Edge> edge_list;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto p = index_path("edges", i);
        if (!edges[i].is_array() || edges[i].size() != 3) fail(p, "expected [u, v, weight]");
        const auto a = index.resolve(edges[i][0], index_path(p, 0));
        const auto b = index.resolve(edges[i][1], index_path(p, 1));
        const auto text = scalar_text(edges[i][2], index_path(p, 2));
        const auto w = ms.parse_weight(text);
        if (!w) fail(index_path(p, 2), "'" + text + "' is not a weight of metric '" + ms.name() + "'");
        edge_list.push_back({a, b, *w});
    }

    std::optional<std::vector<std::vector<ProcessId>>> order;
    if (doc.contains("neighbor_order")) {
        const auto& node = doc["neighbor_order"];
        if (!node.is_object()) fail("neighbor_order", "expected an object mapping nodes to neighbor lists");
        std::vector<std::set<ProcessId>> adjacency(n);
        for (const auto& e : edge_list) {
            adjacency[e.a.index].insert(e.b);
            adjacency[e.b.index].insert(e.a);
        }
        order.emplace();
        for (const auto& adj : adjacency) order->emplace_back(adj.begin(), adj.end());
        for (const auto& [key, list] : node.items()) {
            const auto p = "neighbor_order." + key;
            const auto v = index.resolve(json(key), p);
            if (!list.is_array()) fail(p, "expected a list of neighbors");
            std::vector<ProcessId> seq;
            for (std::size_t i = 0; i < list.size(); ++i) seq.push_back(index.resolve(list[i], index_path(p, i)));
            (*order)[v.index] = std::move(seq);
        }
    }

    std::optional<std::size_t> bound;
    if (doc.contains("D")) bound = natural(doc["D"], "D");

    auto topology = std::make_shared<Topology>(n, root, std::move(edge_list), std::move(order), bound);
    for (const auto& v : validate(*topology, ms)) {
        std::string member = "edges";
        if (v.kind == "order invalid" || v.kind == "order incomplete") member = "neighbor_order";
        else if (v.kind == "path bound") member = "D";
        fail(member, v.kind + ": " + v.detail);
    }
    s.topology = topology;

    if (doc.contains("byzantine")) {
        const auto& list = doc["byzantine"];
        if (!list.is_array()) fail("byzantine", "expected a list of nodes");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto p = index_path("byzantine", i);
            const auto b = index.resolve(list[i], p);
            if (b == root) fail(p, "the root cannot be Byzantine");
            if (std::find(s.byzantine.begin(), s.byzantine.end(), b) != s.byzantine.end()) fail(p, "listed twice");
            s.byzantine.push_back(b);
        }
        std::sort(s.byzantine.begin(), s.byzantine.end());
    }

    if (doc.contains("strategy")) {
        const auto& node = doc["strategy"];
        const auto kind = node.is_string() ? parse_strategy(node.get<std::string>()) : std::nullopt;
        if (!kind) fail("strategy", "expected one of lure, random, oscillate, simulate-correct");
        s.strategy = *kind;
    }

    if (doc.contains("daemon")) {
        const auto& node = doc["daemon"];
        const json* kind_node = &node;
        if (node.is_object()) {
            for (const auto& [key, _] : node.items())
                if (key != "kind" && key != "fairness_bound") fail("daemon." + key, "unknown member");
            if (!node.contains("kind")) fail("daemon.kind", "missing member");
            kind_node = &node["kind"];
            if (node.contains("fairness_bound")) {
                s.fairness_bound = natural(node["fairness_bound"], "daemon.fairness_bound");
                if (*s.fairness_bound == 0) fail("daemon.fairness_bound", "must be at least 1");
            }
        }
        const auto kind = kind_node->is_string() ? parse_daemon(kind_node->get<std::string>()) : std::nullopt;
        if (!kind)
            fail(node.is_object() ? "daemon.kind" : "daemon",
                 "expected one of central, synchronous, random-subset, adversarial-fair");
        s.daemon = *kind;
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
        s.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("max_steps")) {
        s.max_steps = natural(doc["max_steps"], "max_steps");
        if (*s.max_steps == 0) fail("max_steps", "must be at least 1");
    }
    if (doc.contains("containment_horizon")) s.horizon = natural(doc["containment_horizon"], "containment_horizon");

    if (doc.contains("init")) {
        const auto& node = doc["init"];
        if (node.is_string()) {
            if (node.get<std::string>() != "random") fail("init", "expected \"random\" or a list of node states");
        } else if (node.is_array()) {
            if (node.size() != n) fail("init", "expected one state per node");
            std::vector<ProcessState> states;
            for (std::size_t i = 0; i < n; ++i) {
                const auto p = index_path("init", i);
                const auto& st = node[i];
                if (!st.is_object()) fail(p, "expected {\"prnt\", \"level\", \"dist\"}");
                for (const auto& [key, _] : st.items())
                    if (key != "prnt" && key != "level" && key != "dist") fail(p + "." + key, "unknown member");
                for (const char* key : {"prnt", "level", "dist"})
                    if (!st.contains(key)) fail(p + "." + key, "missing member");
                ProcessState state;
                if (!st["prnt"].is_null()) state.parent = index.resolve(st["prnt"], p + ".prnt");
                const auto text = scalar_text(st["level"], p + ".level");
                const auto level = ms.parse_value(text);
                if (!level) fail(p + ".level", "'" + text + "' is not a value of metric '" + ms.name() + "'");
                state.level = *level;
                state.dist = natural(st["dist"], p + ".dist");
                const ProcessId v{i};
                const bool faulty = std::binary_search(s.byzantine.begin(), s.byzantine.end(), v);
                if (!within_domain(*topology, ms, v, state, faulty)) fail(p, "state is outside the variable domains");
                states.push_back(std::move(state));
            }
            s.initial = Configuration(std::move(states));
        } else {
            fail("init", "expected \"random\" or a list of node states");
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("", "cannot read " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("", path.string() + ": " + e.what());
    }
    return parse_scenario(doc);
}

json scenario_to_json(const Scenario& s) {
    const auto& t = *s.topology;
    const auto& ms = *s.metric;
    json doc;
    if (!s.name.empty()) doc["name"] = s.name;
    if (s.labels == default_labels(t.size())) doc["nodes"] = t.size();
    else {
        json nodes = json::array();
        for (const auto& l : s.labels) nodes.push_back(reference(l));
        doc["nodes"] = nodes;
    }
    const auto ref = [&](ProcessId v) { return reference(s.label(v)); };
    json edges = json::array();
    for (const auto& e : t.edges()) edges.push_back(json::array({ref(e.a), ref(e.b), weight_json(ms, e.weight)}));
    doc["edges"] = edges;
    doc["root"] = ref(t.root());

    bool ascending = true;
    for (auto v : t.processes()) {
        auto nbrs = t.neighbors(v);
        if (!std::is_sorted(nbrs.begin(), nbrs.end())) ascending = false;
    }
    if (!ascending) {
        json order = json::object();
        for (auto v : t.processes()) {
            json list = json::array();
            for (auto u : t.neighbors(v)) list.push_back(ref(u));
            order[s.label(v)] = list;
        }
        doc["neighbor_order"] = order;
    }
    doc["metric"] = metric_to_json(ms);
    json byz = json::array();
    for (auto b : s.byzantine) byz.push_back(ref(b));
    doc["byzantine"] = byz;
    doc["strategy"] = std::string(to_string(s.strategy));
    if (s.fairness_bound)
        doc["daemon"] = json{{"kind", std::string(to_string(s.daemon))}, {"fairness_bound", *s.fairness_bound}};
    else
        doc["daemon"] = std::string(to_string(s.daemon));
    doc["seed"] = s.seed;
    if (t.path_bound() != std::max<std::size_t>(t.size(), 2)) doc["D"] = t.path_bound();
    if (s.max_steps) doc["max_steps"] = *s.max_steps;
    doc["containment_horizon"] = s.horizon;
    if (s.initial) {
        json init = json::array();
        for (const auto& st : *s.initial)
            init.push_back(json{{"prnt", st.parent ? ref(*st.parent) : json(nullptr)},
                                {"level", value_json(ms, st.level)},
                                {"dist", st.dist}});
        doc["init"] = init;
    } else {
        doc["init"] = "random";
    }
    return doc;
}

}  // namespace ssmax
