#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "excov/setsys.hpp"

using namespace excov;
using namespace excov::setsys;

TEST_CASE("Block: insert/erase/contains/members") {
    Block b;
    CHECK(b.empty());
    CHECK(b.size() == 0);
    b.insert(3);
    b.insert(1);
    b.insert(512);
    CHECK(b.size() == 3);
    CHECK(b.contains(1));
    CHECK(b.contains(3));
    CHECK(b.contains(512));
    CHECK_FALSE(b.contains(2));
    CHECK(b.members() == std::vector<int>{1, 3, 512});
    b.erase(3);
    CHECK(b.members() == std::vector<int>{1, 512});
    CHECK(block_of({1, 512}) == b);
}

TEST_CASE("lex_less: member-sequence order with prefix rule") {
    CHECK(lex_less(block_of({1, 4}), block_of({2, 3})));
    CHECK_FALSE(lex_less(block_of({2, 3}), block_of({1, 4})));
    CHECK(lex_less(block_of({1, 2}), block_of({1, 2, 3})));  // proper prefix first
    CHECK_FALSE(lex_less(block_of({1, 2}), block_of({1, 2})));
    CHECK(lex_less(Block{}, block_of({1})));
}

TEST_CASE("covers: exactly-one-outside semantics") {
    const Block a = block_of({1, 2});
    CHECK(covers(a, block_of({1, 3})));      // one element (3) outside
    CHECK(covers(a, block_of({3})));         // singleton outside
    CHECK(covers(a, block_of({1, 2, 3})));   // superset by one
    CHECK_FALSE(covers(a, block_of({1})));   // contained: |x\a| = 0, NOT covered
    CHECK_FALSE(covers(a, block_of({1, 2})));
    CHECK_FALSE(covers(a, block_of({3, 4})));  // two outside
    CHECK_FALSE(covers(Block{}, Block{}));
    CHECK(covers(Block{}, block_of({7})));   // empty block covers singletons
}

TEST_CASE("is_subset / complement_block") {
    CHECK(is_subset(block_of({1, 3}), block_of({1, 2, 3})));
    CHECK_FALSE(is_subset(block_of({1, 4}), block_of({1, 2, 3})));
    CHECK(is_subset(Block{}, Block{}));
    CHECK(complement_block(block_of({1, 3}), 5) == block_of({2, 4, 5}));
    CHECK(complement_block(Block{}, 3) == block_of({1, 2, 3}));
    CHECK(complement_block(complement_block(block_of({2, 7}), 9), 9) == block_of({2, 7}));
}

TEST_CASE("SubsetEnum: lexicographic enumeration") {
    SubsetEnum en(4, 2);
    Block b;
    std::vector<std::vector<int>> got;
    while (en.next(b)) got.push_back(b.members());
    std::vector<std::vector<int>> want = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    CHECK(got == want);

    SubsetEnum e0(3, 0);
    int cnt = 0;
    while (e0.next(b)) {
        CHECK(b.empty());
        ++cnt;
    }
    CHECK(cnt == 1);  // exactly the empty set
}

static SetSystem make_sys(int n, int t, Kind k, const std::vector<std::vector<int>>& bl) {
    SetSystem s;
    s.n = n;
    s.t = t;
    s.kind = k;
    for (auto& m : bl) s.blocks.push_back(block_of(m));
    return s;
}

TEST_CASE("is_se_system: minimal SE(4,1) and lex-first witness") {
    // the n-1 singletons {1}..{n-1} form an SE(n,1) system
    auto good = make_sys(4, 1, Kind::se, {{1}, {2}, {3}});
    CHECK(is_se_system(good).ok);

    // drop {3}: {3,4} is the lexicographically first uncovered subset
    auto bad = make_sys(4, 1, Kind::se, {{1}, {2}});
    auto r = is_se_system(bad);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->members() == std::vector<int>{3, 4});
}

TEST_CASE("is_se_system: containment alone never covers") {
    // single block {1,2} over n=3: the 1-subset {1} is contained, not covered
    // by {1,2}; it IS covered though (|{1} \ {1,2}|... {1} subset of {1,2} so
    // 0 outside -> not covered by it; no other block).  First witness is {1}.
    auto sys = make_sys(3, 2, Kind::se, {{1, 2}});
    auto r = is_se_system(sys);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->members() == std::vector<int>{1});
}

TEST_CASE("is_turan_system / is_covering_design: tiny known systems") {
    // T(4,3,2): {1,2},{3,4} -- every 3-subset of [4] contains one of them
    auto tu = make_sys(4, 2, Kind::turan, {{1, 2}, {3, 4}});
    CHECK(is_turan_system(tu, 3).ok);
    auto tu_bad = make_sys(4, 2, Kind::turan, {{1, 2}});
    auto rt = is_turan_system(tu_bad, 3);
    CHECK_FALSE(rt.ok);
    CHECK(rt.witness->members() == std::vector<int>{1, 3, 4});

    // C(4,2,1): same blocks as covering design on singletons
    auto cov = make_sys(4, 2, Kind::covering, {{1, 2}, {3, 4}});
    CHECK(is_covering_design(cov, 1).ok);
    auto cov_bad = make_sys(4, 2, Kind::covering, {{1, 2}, {2, 3}});
    auto rc = is_covering_design(cov_bad, 1);
    CHECK_FALSE(rc.ok);
    CHECK(rc.witness->members() == std::vector<int>{4});
}

TEST_CASE("complement_system: Turan <-> covering duality") {
    // Turan (4,3,2) system -> covering design with blocks of size 2, targets 1
    auto tu = make_sys(4, 2, Kind::turan, {{1, 2}, {3, 4}});
    tu.s = 3;
    auto cov = complement_system(tu);
    CHECK(cov.kind == Kind::covering);
    CHECK(cov.t == 2);  // block size n - t = 2
    CHECK(cov.s == 1);  // target size n - s = 1
    CHECK(is_covering_design(cov, cov.s).ok);

    auto back = complement_system(cov);
    CHECK(back.kind == Kind::turan);
    back.canonicalize();
    auto tu2 = tu;
    tu2.canonicalize();
    CHECK(back.blocks == tu2.blocks);
    CHECK(back.s == 3);
}

TEST_CASE("complement_system: SE system maps to a valid covering design") {
    // SE(5,2) is in particular Turan(5,3,2); complement = covering design
    // with block size 3 containing every 2-subset.
    auto se = make_sys(5, 2, Kind::se,
                       {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {1, 4}, {2, 5}, {3, 4}, {3, 5}});
    REQUIRE(is_se_system(se).ok);
    auto cov = complement_system(se);
    CHECK(cov.kind == Kind::covering);
    CHECK(cov.t == 3);
    CHECK(cov.s == 2);
    CHECK(is_covering_design(cov, 2).ok);
}

TEST_CASE("verifiers refuse when over budget") {
    auto sys = make_sys(12, 5, Kind::se, {{1, 2, 3, 4, 5}});
    CHECK_THROWS_AS(is_se_system(sys, 10), budget_error);
    CHECK_THROWS_AS(is_turan_system(sys, 6, 10), budget_error);
    CHECK_THROWS_AS(is_covering_design(sys, 2, 10), budget_error);
}

TEST_CASE("block file roundtrip") {
    auto sys = make_sys(6, 3, Kind::plain, {{1, 2, 4}, {2, 3, 6}, {1, 5, 6}});
    std::ostringstream os;
    write_blocks(os, sys);
    std::istringstream is(os.str());
    auto rt = read_blocks(is);
    CHECK(rt.n == 6);
    CHECK(rt.t == 3);
    sys.canonicalize();  // the reader canonicalizes, so compare in that order
    CHECK(rt.blocks == sys.blocks);

    // t = 0: one empty block, written as an empty line
    SetSystem empty_sys;
    empty_sys.n = 5;
    empty_sys.t = 0;
    empty_sys.blocks.push_back(Block{});
    std::ostringstream os2;
    write_blocks(os2, empty_sys);
    std::istringstream is2(os2.str());
    auto rt2 = read_blocks(is2);
    CHECK(rt2.n == 5);
    CHECK(rt2.t == 0);
    REQUIRE(rt2.blocks.size() == 1);
    CHECK(rt2.blocks[0].empty());
}

TEST_CASE("block file: comments and parse errors carry line numbers") {
    {
        std::istringstream is("# generated\n4 2 2\n1 2\n# middle comment\n3 4\n");
        auto sys = read_blocks(is);
        CHECK(sys.blocks.size() == 2);
    }
    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream is(text);
        try {
            read_blocks(is);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("", "line");                              // missing header
    expect_error("4 2\n", "header");                       // short header
    expect_error("4 2 1\n1 9\n", "line 2");                // member out of range
    expect_error("4 2 1\n2 2\n", "line 2");                // repeated member
    expect_error("4 2 1\n2 1\n", "line 2");                // not ascending
    expect_error("4 2 2\n1 2\n1 2\n", "line 3");           // duplicate block
    expect_error("4 2 2\n1 2\n", "line");                  // fewer blocks than m
    expect_error("4 2 1\n1 2 3\n", "line 2");              // too many members
}

TEST_CASE("write_blocks_file / read_blocks_file") {
    auto sys = make_sys(5, 2, Kind::plain, {{1, 2}, {3, 5}});
    const std::string path = "test_setsys_rt.blocks";
    write_blocks_file(path, sys);
    auto rt = read_blocks_file(path);
    CHECK(rt.blocks == sys.blocks);
    CHECK_THROWS_AS(read_blocks_file("no_such_file.blocks"), parse_error);
    std::remove(path.c_str());
}

TEST_CASE("canonicalize: sorts lexicographically and dedups") {
    auto sys = make_sys(5, 2, Kind::plain, {{2, 3}, {1, 4}, {2, 3}, {1, 2}});
    sys.canonicalize();
    REQUIRE(sys.blocks.size() == 3);
    CHECK(sys.blocks[0] == block_of({1, 2}));
    CHECK(sys.blocks[1] == block_of({1, 4}));
    CHECK(sys.blocks[2] == block_of({2, 3}));
}
