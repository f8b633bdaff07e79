#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "hypercent/errors.hpp"
#include "hypercent/io.hpp"
#include "hypercent/oracles.hpp"
#include "hypercent/solver.hpp"
#include "helpers.hpp"

using namespace hypercent;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("hypercent_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path file(const std::string& name, const std::string& contents) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << contents;
        return p;
    }
};

} // namespace

TEST_CASE("load_hyperedge_list") {
    TempDir tmp;
    SUBCASE("unweighted pairs form a path") {
        const auto [h, labels] = load_hyperedge_list(tmp.file("a.txt", "0 1\n1 2\n"));
        CHECK(h.node_count() == 3);
        CHECK(h.edge_count() == 2);
        CHECK(h.edge_weight(0) == 1.0);
        CHECK(labels.label(0) == "0");
        CHECK(labels.label(2) == "2");
    }
    SUBCASE("weight prefix and string labels") {
        const auto [h, labels] = load_hyperedge_list(tmp.file("b.txt", "2.5: a b c\n"));
        CHECK(h.edge_count() == 1);
        CHECK(h.edge_weight(0) == 2.5);
        CHECK(*labels.find("a") == 0);
        CHECK(*labels.find("b") == 1);
        CHECK(*labels.find("c") == 2);
    }
    SUBCASE("comments, blank lines and comma separators") {
        const auto [h, labels] =
            load_hyperedge_list(tmp.file("c.txt", "# header\n\na,b\n3: b,c # inline\n"));
        CHECK(h.edge_count() == 2);
        CHECK(h.edge_weight(1) == 3.0);
        CHECK(labels.size() == 3);
    }
    SUBCASE("colon inside a comment is not a weight prefix") {
        const auto [h, labels] =
            load_hyperedge_list(tmp.file("c2.txt", "a b # note: unweighted\n"));
        CHECK(h.edge_count() == 1);
        CHECK(h.edge_weight(0) == 1.0);
    }
    SUBCASE("duplicate edges aggregate, total weight preserved") {
        const auto [h, labels] = load_hyperedge_list(tmp.file("d.txt", "a b\nb a\na b c\n"));
        CHECK(h.edge_count() == 2);
        CHECK(h.edge_weight(0) == 2.0);
        double total = 0.0;
        for (EdgeId e = 0; e < h.edge_count(); ++e)
            total += h.edge_weight(e);
        CHECK(total == 3.0);  // one unit per input line
    }
    SUBCASE("weighted aggregation preserves the count-weighted sum") {
        const auto [h, labels] =
            load_hyperedge_list(tmp.file("dw.txt", "0.5: a b\n2: a b\n3: b c\n"));
        CHECK(h.edge_count() == 2);
        CHECK(h.edge_weight(0) == 2.5);
        double total = 0.0;
        for (EdgeId e = 0; e < h.edge_count(); ++e)
            total += h.edge_weight(e);
        CHECK(total == 5.5);
    }
    SUBCASE("malformed weight names the line") {
        CHECK_THROWS_WITH_AS(load_hyperedge_list(tmp.file("e.txt", "a b\nx!: c d\n")),
                             doctest::Contains(":2"), InputError);
    }
    SUBCASE("adversarial weight prefixes rejected") {
        int idx = 0;
        for (const char* bad : {"-5: a b\n", "0: a b\n", "nan: a b\n", "inf: a b\n",
                                "1e999: a b\n", ": a b\n", "2,5: a b\n"}) {
            const auto p = tmp.file("adv" + std::to_string(idx++) + ".txt", bad);
            CHECK_THROWS_AS(load_hyperedge_list(p), InputError);
        }
    }
    SUBCASE("weight prefix without members") {
        CHECK_THROWS_AS(load_hyperedge_list(tmp.file("f.txt", "2.5:\n")), InputError);
    }
    SUBCASE("empty file rejected") {
        CHECK_THROWS_AS(load_hyperedge_list(tmp.file("g.txt", "# nothing\n\n")), InputError);
        CHECK_THROWS_AS(load_hyperedge_list(tmp.path / "missing.txt"), InputError);
    }
}

TEST_CASE("load_simplex_stream") {
    TempDir tmp;
    SUBCASE("duplicate simplices aggregate into weights") {
        const auto nv = tmp.file("nverts.txt", "2\n2\n");
        const auto sx = tmp.file("simplices.txt", "0\n1\n0\n1\n");
        const auto [h, labels] = load_simplex_stream(nv, sx);
        CHECK(h.edge_count() == 1);
        CHECK(h.edge_weight(0) == 2.0);
        CHECK(h.node_count() == 2);
    }
    SUBCASE("duplicate member collapses inside a simplex") {
        const auto nv = tmp.file("nv.txt", "3\n");
        const auto sx = tmp.file("sx.txt", "5\n5\n7\n");
        const auto [h, labels] = load_simplex_stream(nv, sx);
        CHECK(h.edge_count() == 1);
        CHECK(h.edge_size(0) == 2);
        CHECK(*labels.find("5") == 0);
        CHECK(*labels.find("7") == 1);
    }
    SUBCASE("length mismatch rejected") {
        const auto nv = tmp.file("nv2.txt", "3\n");
        const auto sx = tmp.file("sx2.txt", "1\n2\n");
        CHECK_THROWS_AS(load_simplex_stream(nv, sx), InputError);
    }
    SUBCASE("bad simplex size rejected") {
        const auto nv = tmp.file("nv3.txt", "1.5\n");
        const auto sx = tmp.file("sx3.txt", "1\n2\n");
        CHECK_THROWS_AS(load_simplex_stream(nv, sx), InputError);
    }
}

TEST_CASE("node weight files") {
    TempDir tmp;
    const auto [h, labels] = load_hyperedge_list(tmp.file("h.txt", "a b\nb c\n"));
    SUBCASE("weights apply, absent labels default to 1") {
        const auto nu = load_node_weights(tmp.file("nu.txt", "a 2.0\nc 0.5\n"), labels);
        CHECK(nu == std::vector<double>{2.0, 1.0, 0.5});
        const auto h2 = with_node_weights(h, nu);
        CHECK(h2.node_weight(0) == 2.0);
    }
    SUBCASE("unknown, duplicate and non-positive entries rejected") {
        CHECK_THROWS_AS(load_node_weights(tmp.file("bad1.txt", "zz 1.0\n"), labels), InputError);
        CHECK_THROWS_AS(load_node_weights(tmp.file("bad2.txt", "a 1.0\na 2.0\n"), labels),
                        InputError);
        CHECK_THROWS_AS(load_node_weights(tmp.file("bad3.txt", "a -1\n"), labels), InputError);
        CHECK_THROWS_AS(load_node_weights(tmp.file("bad4.txt", "a\n"), labels), InputError);
    }
}

namespace {

std::vector<std::string> edge_label_set(const Hypergraph& h, const LabelMap& labels, EdgeId e) {
    std::vector<std::string> out;
    for (NodeId i : h.members(e))
        out.push_back(labels.label(i));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("save / load round trip") {
    TempDir tmp;
    for (std::uint64_t seed = 1; seed < 5; ++seed) {
        const auto h = test_helpers::test_instance(seed);
        LabelMap labels;
        for (NodeId i = 0; i < h.node_count(); ++i)
            labels.intern("node_" + std::to_string(i));
        const auto p = tmp.path / ("rt_" + std::to_string(seed) + ".txt");
        save_hyperedge_list(p, h, labels);

        // save -> load preserves the labeled structure (ids may be reassigned
        // to first-seen order)
        const auto [h2, labels2] = load_hyperedge_list(p);
        REQUIRE(h2.node_count() == h.node_count());
        REQUIRE(h2.edge_count() == h.edge_count());
        for (EdgeId e = 0; e < h.edge_count(); ++e) {
            CHECK(h2.edge_weight(e) == h.edge_weight(e));  // %.17g is exact
            CHECK(edge_label_set(h2, labels2, e) == edge_label_set(h, labels, e));
        }

        // load -> save -> load is the identity, ids included
        const auto p2 = tmp.path / ("rt2_" + std::to_string(seed) + ".txt");
        save_hyperedge_list(p2, h2, labels2);
        const auto [h3, labels3] = load_hyperedge_list(p2);
        REQUIRE(h3.node_count() == h2.node_count());
        REQUIRE(h3.edge_count() == h2.edge_count());
        for (NodeId i = 0; i < h2.node_count(); ++i)
            CHECK(labels3.label(i) == labels2.label(i));
        for (EdgeId e = 0; e < h2.edge_count(); ++e) {
            CHECK(h3.edge_weight(e) == h2.edge_weight(e));
            const auto ma = h2.members(e), mb = h3.members(e);
            REQUIRE(ma.size() == mb.size());
            for (std::size_t i = 0; i < ma.size(); ++i)
                CHECK(ma[i] == mb[i]);
        }
        // and byte-stable on the third save
        const auto p3 = tmp.path / ("rt3_" + std::to_string(seed) + ".txt");
        save_hyperedge_list(p3, h3, labels3);
        std::ifstream f2(p2), f3(p3);
        const std::string s2((std::istreambuf_iterator<char>(f2)), {});
        const std::string s3((std::istreambuf_iterator<char>(f3)), {});
        CHECK(s2 == s3);
    }
}

TEST_CASE("prune_isolated") {
    TempDir tmp;
    SUBCASE("identity when nothing is isolated") {
        const auto [h, labels] = load_hyperedge_list(tmp.file("p1.txt", "a b\nb c\n"));
        const auto [h2, labels2, report] = prune_isolated(h, labels);
        CHECK(report.removed_labels.empty());
        CHECK(h2.node_count() == h.node_count());
    }
    SUBCASE("removes gap nodes and re-densifies") {
        LabelMap labels;
        labels.intern("a");
        labels.intern("gap");
        labels.intern("b");
        const auto h = build_hypergraph({{{0, 2}, 1.5}});
        const auto [h2, labels2, report] = prune_isolated(h, labels);
        CHECK(h2.node_count() == 2);
        CHECK(h2.edge_count() == 1);
        CHECK(h2.edge_weight(0) == 1.5);
        REQUIRE(report.removed_labels.size() == 1);
        CHECK(report.removed_labels[0] == "gap");
        CHECK(labels2.label(0) == "a");
        CHECK(labels2.label(1) == "b");
        // idempotent
        const auto [h3, labels3, report3] = prune_isolated(h2, labels2);
        CHECK(report3.removed_labels.empty());
        CHECK(h3.node_count() == 2);
    }
}

TEST_CASE("solution JSON round trip") {
    TempDir tmp;
    const auto h = generate_sunflower({{3, 3, 3}});
    LabelMap labels;
    for (NodeId i = 0; i < h.node_count(); ++i)
        labels.intern(std::to_string(i));
    SolverOptions opts;
    opts.tol = 1e-10;
    const auto sol = npm_solve(h, make_linear(), opts);
    const SolutionMeta meta{"linear", opts.tol, opts.max_iter, opts.norm, false};
    const auto p = tmp.path / "sol.json";
    write_solution_json(p, h, labels, sol, meta);
    const auto loaded = read_solution_json(p);
    CHECK(loaded.model == "linear");
    CHECK(loaded.converged == sol.converged);
    CHECK(loaded.iterations == sol.iterations);
    CHECK(loaded.lambda == sol.lambda);  // full-precision round trip
    CHECK(loaded.mu == sol.mu);
    REQUIRE(loaded.node_scores.size() == sol.x.size());
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        CHECK(loaded.node_scores[i] == sol.x[i]);
    REQUIRE(loaded.edge_scores.size() == sol.y.size());
    CHECK(loaded.edge_weights[0] == 1.0);
    CHECK(loaded.edge_members[0].size() == 3);

    SUBCASE("max-normalized scores peak at 1") {
        const SolutionMeta mn{"linear", opts.tol, opts.max_iter, opts.norm, true};
        const auto pm = tmp.path / "sol_max.json";
        write_solution_json(pm, h, labels, sol, mn);
        const auto lm = read_solution_json(pm);
        CHECK(lm.max_normalized);
        double mx = 0.0;
        for (double t : lm.node_scores)
            mx = std::max(mx, t);
        CHECK(mx == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("garbage rejected") {
        CHECK_THROWS_AS(read_solution_json(tmp.file("bad.json", "{\"model\": 3")), InputError);
        CHECK_THROWS_AS(read_solution_json(tmp.file("bad2.json", "{\"model\": \"m\"}")),
                        InputError);
    }
    SUBCASE("duplicate node labels rejected") {
        const char* doc = R"({"model":"m","options":{},"lambda":1,"mu":1,"converged":true,
            "iterations":1,"nodes":[{"label":"a","score":1},{"label":"a","score":2}],
            "edges":[]})";
        CHECK_THROWS_WITH_AS(read_solution_json(tmp.file("dup.json", doc)),
                             doctest::Contains("duplicate node label"), InputError);
    }
}

TEST_CASE("csv emitters") {
    TempDir tmp;
    std::vector<SimilarityRow> rows{{1, 1.0, std::nullopt, std::nullopt},
                                    {2, 0.75, 0.5, 0.6}};
    const auto p = tmp.path / "curves.csv";
    write_similarity_curves_csv(p, rows, "linear", "max(alpha=10)");
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line.find("linear") != std::string::npos);
    std::getline(in, line);
    CHECK(line.find("topk_protocol") != std::string::npos);
    std::getline(in, line);
    CHECK(line == "k,isim,kendall,spearman");
    std::getline(in, line);
    CHECK(line == "1,1,nan,nan");
    std::getline(in, line);
    CHECK(line == "2,0.75,0.5,0.59999999999999998");
}
