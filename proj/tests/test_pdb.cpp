#include <doctest.h>

#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "oracle.hpp"
#include "sokogen/levels.hpp"
#include "sokogen/pdb.hpp"
#include "sokogen/pdb_cache.hpp"
#include "sokogen/rng.hpp"
#include "sokogen/solver.hpp"
#include "test_util.hpp"

using namespace sokogen;

namespace {

// Forward BFS distance on a GroundDomain, used as the toy ground truth.
int64_t toy_forward_distance(const GroundDomain& domain, const Assignment& start) {
    std::unordered_map<Assignment, int64_t, AssignmentHash> dist;
    std::deque<Assignment> queue;
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        Assignment s = queue.front();
        queue.pop_front();
        if (domain.is_goal(s))
            return dist.at(s);
        int64_t d = dist.at(s);
        for (const Assignment& n : domain.successors(s))
            if (dist.emplace(n, d + 1).second)
                queue.push_back(n);
    }
    return kUnreachable;
}

// Level text with one box and the man at given cells of a maze template.
std::string one_box_level(const std::vector<std::string>& walls_and_goals, int bx, int by,
                          int mx, int my) {
    std::vector<std::string> grid = walls_and_goals;
    grid[by][bx] = grid[by][bx] == '.' ? '*' : '$';
    grid[my][mx] = grid[my][mx] == '.' ? '+' : '@';
    std::string text;
    for (const std::string& row : grid)
        text += row + "\n";
    return text;
}

}  // namespace

TEST_CASE("sampling: the unique size-1 partition") {
    auto collections = sample_pattern_collections(3, 1, 4, 99);
    REQUIRE(collections.size() == 4);
    PatternCollection expected{{0}, {1}, {2}};
    for (const PatternCollection& c : collections)
        CHECK(c == expected);
}

TEST_CASE("sampling: size-2 blocks over three variables") {
    // Exactly three partitions exist; 3000 draws should hit each roughly
    // equally (chi-squared well under 16 for a fair sampler).
    auto collections = sample_pattern_collections(3, 2, 3000, 4242);
    std::map<PatternCollection, int> counts;
    for (const PatternCollection& c : collections) {
        REQUIRE(c.size() == 2);
        REQUIRE(c[0].size() + c[1].size() == 3);
        ++counts[c];
    }
    REQUIRE(counts.size() == 3);
    double chi2 = 0;
    for (const auto& [partition, n] : counts) {
        double diff = n - 1000.0;
        chi2 += diff * diff / 1000.0;
    }
    CHECK(chi2 < 16.0);
}

TEST_CASE("sampling: remainder block gets |V| mod k' variables") {
    auto collections = sample_pattern_collections(5, 4, 10, 7);
    for (const PatternCollection& c : collections) {
        REQUIRE(c.size() == 2);
        std::multiset<size_t> sizes{c[0].size(), c[1].size()};
        CHECK(sizes == std::multiset<size_t>{1, 4});
        std::set<int32_t> vars;
        for (const Pattern& p : c)
            vars.insert(p.begin(), p.end());
        CHECK(vars.size() == 5);
    }
}

TEST_CASE("sampling: rejects bad arguments and is seed-deterministic") {
    CHECK_THROWS_AS(sample_pattern_collections(3, 0, 1, 1), InvalidK);
    CHECK_THROWS_AS(sample_pattern_collections(3, 1, 0, 1), InvalidK);
    CHECK(sample_pattern_collections(8, 3, 20, 555) == sample_pattern_collections(8, 3, 20, 555));
    CHECK(sample_pattern_collections(8, 3, 20, 555) != sample_pattern_collections(8, 3, 20, 556));
}

TEST_CASE("toy pattern tables reproduce the worked example") {
    GroundDomain toy = toy_pe_problem();
    Assignment s0{0, 0, 0};

    ToyPatternTable v1(toy, {0});
    CHECK(v1.distance(s0) == 1);

    ToyPatternTable v23(toy, {1, 2});
    CHECK(v23.distance(s0) == 6);

    ToyAdditivePdb additive(toy, {{0}, {1, 2}});
    CHECK(additive.value(s0) == 7);

    ToyHeuristicBundle bundle(toy, 123, 4);
    CHECK(bundle.h(1, s0) == 3);
    CHECK(bundle.h(2, s0) == 7);
    CHECK(bundle.h(3, s0) == 9);
    CHECK(bundle.conflicts(2, s0) == 4);
    CHECK(bundle.conflicts(3, s0) == 2);

    Assignment goal{3, 3, 3};
    for (int k = 1; k <= 3; ++k)
        CHECK(bundle.h(k, goal) == 0);
    CHECK(bundle.conflicts(2, goal) == 0);
    CHECK(bundle.conflicts(3, goal) == 0);
}

TEST_CASE("full-variable pattern equals the true distance on the toy domain") {
    GroundDomain toy = toy_pe_problem();
    ToyPatternTable full(toy, {0, 1, 2});
    for (int32_t a = 0; a < 5; ++a)
        for (int32_t b = 0; b < 5; ++b)
            for (int32_t c = 0; c < 5; ++c) {
                Assignment s{a, b, c};
                CHECK(full.distance(s) == toy_forward_distance(toy, s));
            }
}

TEST_CASE("conflicts clamp at zero and ignore unreachable values") {
    CHECK(conflict_order_value(9, 7) == 2);
    CHECK(conflict_order_value(7, 9) == 0);
    CHECK(conflict_order_value(5, 5) == 0);
    CHECK(conflict_order_value(kUnreachable, 3) == 0);
    CHECK(conflict_order_value(3, kUnreachable) == 0);
    CHECK(saturated_add(kUnreachable, 5) == kUnreachable);
    CHECK(saturated_add(5, kUnreachable) == kUnreachable);
    CHECK(saturated_add(2, 3) == 5);
}

TEST_CASE("one-box tables equal true push distances on an empty room") {
    // 4x4 inner room, goal in a corner area.
    std::vector<std::string> grid{"######", "#    #", "#    #", "#    #", "#.   #", "######"};
    ParsedLevel parsed = parse_xsb(one_box_level(grid, 2, 2, 1, 1));
    const Maze& maze = parsed.maze;

    BoxPatternTable table(maze, 1);
    for (int bx = 1; bx <= 4; ++bx) {
        for (int by = 1; by <= 4; ++by) {
            for (int mx = 1; mx <= 4; ++mx) {
                for (int my = 1; my <= 4; ++my) {
                    if (bx == mx && by == my)
                        continue;
                    ParsedLevel instance = parse_xsb(one_box_level(grid, bx, by, mx, my));
                    BoxPatternState abstract = project_state(
                        instance.maze, instance.state, std::vector<int32_t>{0});
                    int64_t h = table.distance(abstract);
                    auto truth = oracle::min_pushes(oracle::parse(one_box_level(grid, bx, by, mx, my)));
                    if (truth)
                        CHECK(h == *truth);
                    else
                        CHECK(h == kUnreachable);
                }
            }
        }
    }
}

TEST_CASE("a full-variable pattern is exact on multi-box mazes") {
    ParsedLevel level = parse_xsb(
        "#######\n"
        "# . . #\n"
        "# $ $ #\n"
        "#  @  #\n"
        "#######\n");
    SokobanDomain domain(level.maze);
    auto store = std::make_shared<BoxTableStore>(level.maze);
    SokobanAdditivePdb full = build_additive_pdb(store, {{0, 1}});

    Rng rng(8);
    SokobanState s = domain.goal_states().front();
    for (int step = 0; step < 40; ++step) {
        OracleResult truth = optimal_push_count(level.maze, s);
        REQUIRE(truth.status == OracleStatus::Optimal);
        CHECK(full.value(s) == truth.pushes);
        auto preds = domain.predecessors(s);
        if (preds.empty())
            break;
        s = preds[rng.below(preds.size())];
    }
}

TEST_CASE("max over collections never decreases with more collections") {
    ParsedLevel level = parse_xsb(
        "########\n"
        "#   .  #\n"
        "# $##$ #\n"
        "# . @  #\n"
        "########\n");
    auto store = std::make_shared<BoxTableStore>(level.maze);
    SokobanAdditivePdb a = build_additive_pdb(store, {{0}, {1}});
    SokobanAdditivePdb b = build_additive_pdb(store, {{0, 1}});

    Rng rng(5);
    SokobanDomain domain(level.maze);
    std::vector<SokobanState> frontier = domain.goal_states();
    for (int step = 0; step < 200 && !frontier.empty(); ++step) {
        SokobanState s = frontier[rng.below(frontier.size())];
        int64_t va = a.value(s);
        int64_t vb = b.value(s);
        CHECK(std::max(va, vb) >= va);
        CHECK(std::max(va, vb) >= vb);
        frontier = domain.predecessors(s);
    }
}

TEST_CASE("lazy mode returns the same distances as eager tables") {
    ParsedLevel level = parse_xsb(
        "#######\n"
        "# . . #\n"
        "# $ $ #\n"
        "#  @  #\n"
        "#######\n");
    const Maze& maze = level.maze;
    BoxPatternTable eager(maze, 2);
    BoxPatternTable lazy(maze, 2, /*eager_cap=*/4);
    REQUIRE(lazy.lazy());
    REQUIRE_FALSE(eager.lazy());

    SokobanDomain domain(level.maze);
    std::vector<SokobanState> layer = domain.goal_states();
    std::vector<int32_t> pattern{0, 1};
    for (int step = 0; step < 30 && !layer.empty(); ++step) {
        const SokobanState& s = layer.front();
        BoxPatternState abstract = project_state(maze, s, pattern);
        CHECK(lazy.distance(abstract) == eager.distance(abstract));
        layer = domain.predecessors(s);
    }
}

TEST_CASE("pdb cache round trip is value- and byte-identical") {
    ParsedLevel level = parse_xsb(
        "#######\n"
        "# . . #\n"
        "# $ $ #\n"
        "#  @  #\n"
        "#######\n");
    const Maze& maze = level.maze;
    const uint64_t seed = 77;
    const std::string path = "/tmp/sokogen_test_cache.pdb";
    std::remove(path.c_str());

    auto fresh = std::make_shared<BoxTableStore>(maze);
    SokobanHeuristicBundle original(fresh, seed, 4);
    save_pdb_cache(path, maze, 4, seed, *fresh);

    auto loaded_store = std::make_shared<BoxTableStore>(maze);
    REQUIRE(load_pdb_cache(path, maze, 4, seed, *loaded_store));
    SokobanHeuristicBundle loaded(loaded_store, seed, 4);

    SokobanDomain domain(maze);
    std::vector<SokobanState> layer = domain.goal_states();
    for (int step = 0; step < 20 && !layer.empty(); ++step) {
        for (int k = 1; k <= 4; ++k)
            CHECK(loaded.h(k, layer.front()) == original.h(k, layer.front()));
        layer = domain.predecessors(layer.front());
    }

    // Re-saving the loaded store reproduces the file byte for byte.
    const std::string copy = "/tmp/sokogen_test_cache2.pdb";
    std::remove(copy.c_str());
    save_pdb_cache(copy, maze, 4, seed, *loaded_store);
    CHECK(read_text_file(copy) == read_text_file(path));

    // A different key is rejected.
    CHECK_FALSE(load_pdb_cache(path, maze, 3, seed, *loaded_store));
    CHECK_FALSE(load_pdb_cache(path, maze, 4, seed + 1, *loaded_store));
}

TEST_CASE("h^PDBk is deterministic in the seed") {
    ParsedLevel level = parse_xsb(
        "########\n"
        "# ..   #\n"
        "# $$ @ #\n"
        "#    . #\n"
        "#   $  #\n"
        "########\n");
    SokobanHeuristicBundle a(level.maze, 31337, 4);
    SokobanHeuristicBundle b(level.maze, 31337, 4);
    SokobanDomain domain(level.maze);
    std::vector<SokobanState> layer = domain.goal_states();
    for (int step = 0; step < 25 && !layer.empty(); ++step) {
        for (int k = 1; k <= 4; ++k)
            CHECK(a.h(k, layer.front()) == b.h(k, layer.front()));
        layer = domain.predecessors(layer.front());
    }
}
