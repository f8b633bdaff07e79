#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypercent/hypergraph.hpp"
#include "hypercent/rank_metrics.hpp"
#include "hypercent/solver.hpp"

namespace hypercent {

// Bijective mapping between external string labels and dense internal ids,
// assigned in first-seen order.
class LabelMap {
public:
    std::int32_t intern(const std::string& label);
    std::optional<std::int32_t> find(const std::string& label) const;
    const std::string& label(std::int32_t id) const { return labels_[id]; }
    std::int32_t size() const { return static_cast<std::int32_t>(labels_.size()); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::int32_t> ids_;
};

/// Line-per-edge text format: optional "weight:" prefix, then member labels
/// separated by whitespace or commas. '#' starts a comment, blank lines are
/// skipped. Duplicate member sets are merged with summed weights.
/// Throws InputError with the line number on malformed lines and on files
/// containing no edges.
std::pair<Hypergraph, LabelMap> load_hyperedge_list(const std::filesystem::path& path);

/// Simplex-stream pair: nverts file lists the member count of each simplex,
/// simplices file lists the flat member label sequence. One hyperedge per
/// simplex, duplicates aggregated into weights. Throws InputError when the
/// nverts total disagrees with the member list length.
std::pair<Hypergraph, LabelMap> load_simplex_stream(const std::filesystem::path& nverts_path,
                                                    const std::filesystem::path& simplices_path);

/// "label weight" lines; weights for labels absent from the file default
/// to 1. Unknown or repeated labels are rejected.
std::vector<double> load_node_weights(const std::filesystem::path& path, const LabelMap& labels);

/// Writes the hyperedge-list format ("weight: labels...") so that reloading
/// reproduces the identical hypergraph and label map.
void save_hyperedge_list(const std::filesystem::path& path, const Hypergraph& h,
                         const LabelMap& labels);

struct PruneReport {
    std::vector<std::string> removed_labels;
};

/// Removes degree-0 nodes and re-densifies ids; idempotent.
std::tuple<Hypergraph, LabelMap, PruneReport> prune_isolated(const Hypergraph& h,
                                                             const LabelMap& labels);

struct SolutionMeta {
    std::string model;
    double tol = 1e-8;
    int max_iter = 1000;
    Norm norm = Norm::L2;
    bool max_normalize = false;  // scores divided by their largest entry
};

void write_solution_json(const std::filesystem::path& path, const Hypergraph& h,
                         const LabelMap& labels, const CentralitySolution& sol,
                         const SolutionMeta& meta);

struct LoadedSolution {
    std::string model;
    bool converged = false;
    int iterations = 0;
    double lambda = 0.0;
    double mu = 0.0;
    bool max_normalized = false;
    std::vector<std::string> node_labels;
    std::vector<double> node_scores;
    std::vector<std::vector<std::string>> edge_members;
    std::vector<double> edge_weights;
    std::vector<double> edge_scores;
};

LoadedSolution read_solution_json(const std::filesystem::path& path);

/// Similarity-vs-k curve CSV ("k,isim,kendall,spearman", undefined cells as
/// "nan"). Header comments record the models and the top-k pairing protocol.
void write_similarity_curves_csv(const std::filesystem::path& path,
                                 const std::vector<SimilarityRow>& rows,
                                 const std::string& model1, const std::string& model2);

/// Node scatter between two solutions over the same label set:
/// "label,score1,score2,score1_maxnorm,score2_maxnorm".
void write_node_scatter_csv(const std::filesystem::path& path, const LoadedSolution& a,
                            const LoadedSolution& b);

/// Edge weight vs edge centrality: "members,weight,score,score_maxnorm".
void write_edge_weight_scatter_csv(const std::filesystem::path& path, const LoadedSolution& sol);

} // namespace hypercent
