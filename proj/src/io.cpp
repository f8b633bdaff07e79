#include "hypercent/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypercent/errors.hpp"

namespace hypercent {

using nlohmann::json;

std::int32_t LabelMap::intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<std::int32_t>(labels_.size()));
    if (inserted)
        labels_.push_back(label);
    return it->second;
}

std::optional<std::int32_t> LabelMap::find(const std::string& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    return in;
}

// strips '#' comments, splits on whitespace and commas
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#')
            break;
        if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::optional<double> parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::pair<Hypergraph, LabelMap> load_hyperedge_list(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    LabelMap labels;
    std::vector<std::pair<std::vector<NodeId>, double>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = line.substr(0, line.find('#'));
        std::string body = stripped;
        double weight = 1.0;
        const auto colon = stripped.find(':');
        if (colon != std::string::npos) {
            const auto w = parse_double(stripped.substr(0, colon));
            if (!w || !(*w > 0.0) || !std::isfinite(*w))
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": malformed weight prefix");
            weight = *w;
            body = stripped.substr(colon + 1);
        }
        const auto tokens = tokenize(body);
        if (tokens.empty()) {
            if (colon != std::string::npos)
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": weight prefix without members");
            continue;  // blank or comment-only line
        }
        std::vector<NodeId> members;
        members.reserve(tokens.size());
        for (const auto& t : tokens)
            members.push_back(labels.intern(t));
        edges.push_back({std::move(members), weight});
    }
    if (edges.empty())
        throw InputError(path.string() + ": no hyperedges found");
    return {build_hypergraph(edges), std::move(labels)};
}

std::pair<Hypergraph, LabelMap> load_simplex_stream(const std::filesystem::path& nverts_path,
                                                    const std::filesystem::path& simplices_path) {
    std::vector<std::int64_t> nverts;
    {
        std::ifstream in = open_or_throw(nverts_path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            for (const auto& t : tokenize(line)) {
                const auto v = parse_double(t);
                if (!v || *v < 1 || *v != std::floor(*v))
                    throw InputError(nverts_path.string() + ":" + std::to_string(lineno) +
                                     ": simplex size must be a positive integer, got '" + t +
                                     "'");
                nverts.push_back(static_cast<std::int64_t>(*v));
            }
        }
    }
    std::vector<std::string> members;
    {
        std::ifstream in = open_or_throw(simplices_path);
        std::string line;
        while (std::getline(in, line))
            for (auto& t : tokenize(line))
                members.push_back(std::move(t));
    }
    std::int64_t total = 0;
    for (std::int64_t c : nverts)
        total += c;
    if (total != static_cast<std::int64_t>(members.size()))
        throw InputError("simplex stream mismatch: nverts total " + std::to_string(total) +
                         " != member count " + std::to_string(members.size()));
    if (nverts.empty())
        throw InputError(nverts_path.string() + ": no simplices found");

    LabelMap labels;
    std::vector<std::pair<std::vector<NodeId>, double>> edges;
    edges.reserve(nverts.size());
    std::size_t cursor = 0;
    for (std::int64_t c : nverts) {
        std::vector<NodeId> edge;
        edge.reserve(static_cast<std::size_t>(c));
        for (std::int64_t j = 0; j < c; ++j)
            edge.push_back(labels.intern(members[cursor++]));
        edges.push_back({std::move(edge), 1.0});
    }
    return {build_hypergraph(edges), std::move(labels)};
}

std::vector<double> load_node_weights(const std::filesystem::path& path, const LabelMap& labels) {
    std::ifstream in = open_or_throw(path);
    std::vector<double> weights(static_cast<std::size_t>(labels.size()), 1.0);
    std::vector<char> seen(static_cast<std::size_t>(labels.size()), 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        if (tokens.size() != 2)
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": expected 'label weight'");
        const auto id = labels.find(tokens[0]);
        if (!id)
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": unknown label '" +
                             tokens[0] + "'");
        if (seen[*id])
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": duplicate entry for label '" + tokens[0] + "'");
        const auto w = parse_double(tokens[1]);
        if (!w || !(*w > 0.0) || !std::isfinite(*w))
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": node weight must be positive");
        weights[*id] = *w;
        seen[*id] = 1;
    }
    return weights;
}

void save_hyperedge_list(const std::filesystem::path& path, const Hypergraph& h,
                         const LabelMap& labels) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        out << format_double(h.edge_weight(e)) << ":";
        for (NodeId i : h.members(e))
            out << ' ' << labels.label(i);
        out << '\n';
    }
}

std::tuple<Hypergraph, LabelMap, PruneReport> prune_isolated(const Hypergraph& h,
                                                             const LabelMap& labels) {
    PruneReport report;
    std::vector<NodeId> remap(static_cast<std::size_t>(h.node_count()), -1);
    LabelMap kept;
    std::vector<double> node_weights;
    for (NodeId i = 0; i < h.node_count(); ++i) {
        if (h.degree(i) == 0) {
            report.removed_labels.push_back(labels.label(i));
        } else {
            remap[i] = kept.intern(labels.label(i));
            node_weights.push_back(h.node_weight(i));
        }
    }
    if (report.removed_labels.empty())
        return {h, labels, std::move(report)};

    std::vector<std::pair<std::vector<NodeId>, double>> edges;
    edges.reserve(static_cast<std::size_t>(h.edge_count()));
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        std::vector<NodeId> mem;
        mem.reserve(h.members(e).size());
        for (NodeId i : h.members(e))
            mem.push_back(remap[i]);
        edges.push_back({std::move(mem), h.edge_weight(e)});
    }
    return {build_hypergraph(edges, node_weights), std::move(kept), std::move(report)};
}

void write_solution_json(const std::filesystem::path& path, const Hypergraph& h,
                         const LabelMap& labels, const CentralitySolution& sol,
                         const SolutionMeta& meta) {
    double xmax = 0.0, ymax = 0.0;
    for (double t : sol.x)
        xmax = std::max(xmax, t);
    for (double t : sol.y)
        ymax = std::max(ymax, t);
    const double xscale = meta.max_normalize && xmax > 0.0 ? 1.0 / xmax : 1.0;
    const double yscale = meta.max_normalize && ymax > 0.0 ? 1.0 / ymax : 1.0;

    json doc;
    doc["model"] = meta.model;
    doc["options"] = {{"tol", meta.tol},
                      {"max_iter", meta.max_iter},
                      {"norm", norm_name(meta.norm)},
                      {"max_normalize", meta.max_normalize}};
    doc["lambda"] = sol.lambda;
    doc["mu"] = sol.mu;
    doc["converged"] = sol.converged;
    doc["iterations"] = sol.iterations;
    json nodes = json::array();
    for (NodeId i = 0; i < h.node_count(); ++i)
        nodes.push_back({{"label", labels.label(i)}, {"score", sol.x[i] * xscale}});
    doc["nodes"] = std::move(nodes);
    json edges = json::array();
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        json members = json::array();
        for (NodeId i : h.members(e))
            members.push_back(labels.label(i));
        edges.push_back({{"members", std::move(members)},
                         {"weight", h.edge_weight(e)},
                         {"score", sol.y[e] * yscale}});
    }
    doc["edges"] = std::move(edges);

    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

LoadedSolution read_solution_json(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    LoadedSolution sol;
    try {
        sol.model = doc.at("model").get<std::string>();
        sol.converged = doc.at("converged").get<bool>();
        sol.iterations = doc.at("iterations").get<int>();
        sol.lambda = doc.at("lambda").get<double>();
        sol.mu = doc.at("mu").get<double>();
        sol.max_normalized = doc.at("options").value("max_normalize", false);
        std::unordered_map<std::string, char> seen;
        for (const auto& node : doc.at("nodes")) {
            auto label = node.at("label").get<std::string>();
            if (!seen.try_emplace(label, 1).second)
                throw InputError(path.string() + ": duplicate node label '" + label + "'");
            sol.node_labels.push_back(std::move(label));
            sol.node_scores.push_back(node.at("score").get<double>());
        }
        for (const auto& edge : doc.at("edges")) {
            std::vector<std::string> members;
            for (const auto& l : edge.at("members"))
                members.push_back(l.get<std::string>());
            sol.edge_members.push_back(std::move(members));
            sol.edge_weights.push_back(edge.at("weight").get<double>());
            sol.edge_scores.push_back(edge.at("score").get<double>());
        }
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": not a solution file: " + e.what());
    }
    return sol;
}

namespace {

std::string optional_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    return out;
}

} // namespace

void write_similarity_curves_csv(const std::filesystem::path& path,
                                 const std::vector<SimilarityRow>& rows,
                                 const std::string& model1, const std::string& model2) {
    std::ofstream out = open_out(path);
    out << "# similarity curves: " << model1 << " vs " << model2 << "\n";
    out << "# topk_protocol=first-list-topk (kendall/spearman restricted to model1's top-k ids)\n";
    out << "k,isim,kendall,spearman\n";
    for (const auto& row : rows)
        out << row.k << ',' << format_double(row.isim) << ',' << optional_cell(row.kendall) << ','
            << optional_cell(row.spearman) << '\n';
}

void write_node_scatter_csv(const std::filesystem::path& path, const LoadedSolution& a,
                            const LoadedSolution& b) {
    if (a.node_labels.size() != b.node_labels.size())
        throw InputError("node scatter: solutions cover different node sets");
    std::unordered_map<std::string, double> score_b;
    for (std::size_t i = 0; i < b.node_labels.size(); ++i)
        score_b[b.node_labels[i]] = b.node_scores[i];
    double amax = 0.0, bmax = 0.0;
    for (double t : a.node_scores)
        amax = std::max(amax, t);
    for (double t : b.node_scores)
        bmax = std::max(bmax, t);
    std::ofstream out = open_out(path);
    out << "# node scatter: " << a.model << " vs " << b.model << "\n";
    out << "label,score1,score2,score1_maxnorm,score2_maxnorm\n";
    for (std::size_t i = 0; i < a.node_labels.size(); ++i) {
        const auto it = score_b.find(a.node_labels[i]);
        if (it == score_b.end())
            throw InputError("node scatter: label '" + a.node_labels[i] +
                             "' missing from second solution");
        out << a.node_labels[i] << ',' << format_double(a.node_scores[i]) << ','
            << format_double(it->second) << ','
            << format_double(amax > 0 ? a.node_scores[i] / amax : 0.0) << ','
            << format_double(bmax > 0 ? it->second / bmax : 0.0) << '\n';
    }
}

void write_edge_weight_scatter_csv(const std::filesystem::path& path, const LoadedSolution& sol) {
    double ymax = 0.0;
    for (double t : sol.edge_scores)
        ymax = std::max(ymax, t);
    std::ofstream out = open_out(path);
    out << "# edge weight vs centrality: " << sol.model << "\n";
    out << "members,weight,score,score_maxnorm\n";
    for (std::size_t e = 0; e < sol.edge_scores.size(); ++e) {
        std::string joined;
        for (std::size_t j = 0; j < sol.edge_members[e].size(); ++j) {
            if (j)
                joined += ';';
            joined += sol.edge_members[e][j];
        }
        out << joined << ',' << format_double(sol.edge_weights[e]) << ','
            << format_double(sol.edge_scores[e]) << ','
            << format_double(ymax > 0 ? sol.edge_scores[e] / ymax : 0.0) << '\n';
    }
}

} // namespace hypercent
