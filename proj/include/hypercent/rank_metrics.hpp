#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hypercent {

// Total order over entity ids 0..n-1, descending score with ties broken by
// ascending id, plus the score vector it was derived from.
struct RankedList {
    std::vector<std::int32_t> order;
    std::vector<double> scores;
};

/// Throws PreconditionError when a score is NaN.
RankedList rank(std::span<const double> scores);

/// Top-k intersection similarity between two ranked id lists:
///   1 - (1/k) * sum_{t=1..k} |prefix_t(l1) symdiff prefix_t(l2)| / (2t).
/// 1 iff the length-k prefixes coincide as ordered sequences, 0 when the
/// lists share no elements. Ids must be non-negative and distinct within
/// each list. Throws PreconditionError when k is out of range.
double intersection_similarity(std::span<const std::int32_t> l1, std::span<const std::int32_t> l2,
                               int k);
double intersection_similarity(const RankedList& l1, const RankedList& l2, int k);

/// Kendall tau-b (tie corrected), O(n log n). nullopt when either input has
/// zero variance. Throws PreconditionError on length mismatch or n < 2.
std::optional<double> kendall_tau(std::span<const double> scores1,
                                  std::span<const double> scores2);

/// Spearman correlation: Pearson correlation of mid-ranks (ties get average
/// ranks). nullopt when either input has zero variance.
std::optional<double> spearman(std::span<const double> scores1, std::span<const double> scores2);

// One row of a similarity-vs-k curve. Kendall/Spearman are computed over the
// two score vectors restricted to the FIRST list's top-k ids and are absent
// for k = 1 or under zero variance.
struct SimilarityRow {
    int k = 0;
    double isim = 0.0;
    std::optional<double> kendall;
    std::optional<double> spearman;
};

/// Curves for k = 1..k_max comparing two score vectors over the same
/// entities.
std::vector<SimilarityRow> similarity_curves(std::span<const double> scores1,
                                             std::span<const double> scores2, int k_max);

} // namespace hypercent
