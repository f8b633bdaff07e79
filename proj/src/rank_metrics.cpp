#include "hypercent/rank_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hypercent/errors.hpp"

namespace hypercent {

RankedList rank(std::span<const double> scores) {
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (std::isnan(scores[i]))
            throw PreconditionError("rank: NaN score at index " + std::to_string(i));
    RankedList out;
    out.scores.assign(scores.begin(), scores.end());
    out.order.resize(scores.size());
    std::iota(out.order.begin(), out.order.end(), 0);
    std::sort(out.order.begin(), out.order.end(), [&](std::int32_t a, std::int32_t b) {
        if (scores[a] != scores[b])
            return scores[a] > scores[b];
        return a < b;
    });
    return out;
}

double intersection_similarity(std::span<const std::int32_t> l1, std::span<const std::int32_t> l2,
                               int k) {
    const auto limit = static_cast<int>(std::min(l1.size(), l2.size()));
    if (k < 1 || k > limit)
        throw PreconditionError("intersection_similarity: k = " + std::to_string(k) +
                                " out of range [1, " + std::to_string(limit) + "]");
    std::int32_t max_id = 0;
    for (int t = 0; t < k; ++t) {
        if (l1[t] < 0 || l2[t] < 0)
            throw PreconditionError("intersection_similarity: negative id");
        max_id = std::max({max_id, l1[t], l2[t]});
    }
    // incremental symmetric-difference size over the growing prefixes
    std::vector<char> in1(static_cast<std::size_t>(max_id) + 1, 0);
    std::vector<char> in2(static_cast<std::size_t>(max_id) + 1, 0);
    std::int64_t symdiff = 0;
    double acc = 0.0;
    for (int t = 0; t < k; ++t) {
        const std::int32_t a = l1[t], b = l2[t];
        in1[a] = 1;
        symdiff += in2[a] ? -1 : +1;
        in2[b] = 1;
        symdiff += in1[b] ? -1 : +1;
        acc += static_cast<double>(symdiff) / (2.0 * (t + 1));
    }
    return 1.0 - acc / k;
}

double intersection_similarity(const RankedList& l1, const RankedList& l2, int k) {
    return intersection_similarity(std::span<const std::int32_t>(l1.order),
                                   std::span<const std::int32_t>(l2.order), k);
}

namespace {

std::int64_t tie_pair_count(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::int64_t pairs = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        const auto t = static_cast<std::int64_t>(j - i);
        pairs += t * (t - 1) / 2;
        i = j;
    }
    return pairs;
}

// strict inversions (b[i] > b[j] with i < j) counted by merge sort
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv =
        count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t a = lo, b = mid, o = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) {
            inv += static_cast<std::int64_t>(mid - a);
            buf[o++] = v[b++];
        } else {
            buf[o++] = v[a++];
        }
    }
    while (a < mid)
        buf[o++] = v[a++];
    while (b < hi)
        buf[o++] = v[b++];
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return inv;
}

} // namespace

std::optional<double> kendall_tau(std::span<const double> scores1,
                                  std::span<const double> scores2) {
    if (scores1.size() != scores2.size())
        throw PreconditionError("kendall_tau: length mismatch");
    const auto n = static_cast<std::int64_t>(scores1.size());
    if (n < 2)
        throw PreconditionError("kendall_tau: need at least 2 entries");

    std::vector<std::int32_t> idx(scores1.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::int32_t a, std::int32_t b) {
        if (scores1[a] != scores1[b])
            return scores1[a] < scores1[b];
        return scores2[a] < scores2[b];
    });

    // tie counts: n1 in the first variable, n2 in the second, n3 joint
    std::int64_t n1 = 0, n3 = 0;
    {
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j < idx.size() && scores1[idx[j]] == scores1[idx[i]])
                ++j;
            const auto t = static_cast<std::int64_t>(j - i);
            n1 += t * (t - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && scores2[idx[b]] == scores2[idx[a]])
                    ++b;
                const auto u = static_cast<std::int64_t>(b - a);
                n3 += u * (u - 1) / 2;
                a = b;
            }
            i = j;
        }
    }
    const std::int64_t n2 = tie_pair_count({scores2.begin(), scores2.end()});

    const std::int64_t n0 = n * (n - 1) / 2;
    if (n0 == n1 || n0 == n2)
        return std::nullopt;  // zero variance in one of the inputs

    // discordant pairs = strict inversions of the second variable once the
    // items are sorted by (first asc, second asc)
    std::vector<double> seq(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        seq[i] = scores2[idx[i]];
    std::vector<double> buf(seq.size());
    const std::int64_t discordant = count_inversions(seq, buf, 0, seq.size());

    const double con_minus_dis =
        static_cast<double>(n0 - n1 - n2 + n3) - 2.0 * static_cast<double>(discordant);
    return con_minus_dis /
           std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

namespace {

std::vector<double> midranks(std::span<const double> v) {
    std::vector<std::int32_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::int32_t a, std::int32_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && v[idx[j]] == v[idx[i]])
            ++j;
        const double mid = 0.5 * static_cast<double>(i + j - 1) + 1.0;  // 1-based average rank
        for (std::size_t t = i; t < j; ++t)
            ranks[idx[t]] = mid;
        i = j;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(std::span<const double> scores1, std::span<const double> scores2) {
    if (scores1.size() != scores2.size())
        throw PreconditionError("spearman: length mismatch");
    if (scores1.size() < 2)
        throw PreconditionError("spearman: need at least 2 entries");
    const auto r1 = midranks(scores1);
    const auto r2 = midranks(scores2);
    const auto n = static_cast<double>(r1.size());
    double m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        m1 += r1[i];
        m2 += r2[i];
    }
    m1 /= n;
    m2 /= n;
    double cov = 0, v1 = 0, v2 = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        const double d1 = r1[i] - m1, d2 = r2[i] - m2;
        cov += d1 * d2;
        v1 += d1 * d1;
        v2 += d2 * d2;
    }
    if (v1 == 0.0 || v2 == 0.0)
        return std::nullopt;
    return cov / std::sqrt(v1 * v2);
}

std::vector<SimilarityRow> similarity_curves(std::span<const double> scores1,
                                             std::span<const double> scores2, int k_max) {
    if (scores1.size() != scores2.size())
        throw PreconditionError("similarity_curves: score vectors differ in length");
    if (k_max < 1 || static_cast<std::size_t>(k_max) > scores1.size())
        throw PreconditionError("similarity_curves: k_max = " + std::to_string(k_max) +
                                " out of range [1, " + std::to_string(scores1.size()) + "]");
    const RankedList l1 = rank(scores1);
    const RankedList l2 = rank(scores2);
    std::vector<SimilarityRow> rows;
    rows.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        SimilarityRow row;
        row.k = k;
        row.isim = intersection_similarity(l1, l2, k);
        if (k >= 2) {
            // pair the two models on the first list's top-k entities
            std::vector<double> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
            for (int t = 0; t < k; ++t) {
                a[t] = scores1[l1.order[t]];
                b[t] = scores2[l1.order[t]];
            }
            row.kendall = kendall_tau(a, b);
            row.spearman = spearman(a, b);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace hypercent
