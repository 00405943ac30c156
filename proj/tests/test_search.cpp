#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "kcube/search.hpp"

using namespace kcube;

TEST_CASE("search finds a Hamiltonian cycle in Q_2^4") {
  ConstraintSpec spec;
  spec.region = Region::whole(CubeShape{2, 4});
  auto res = search(spec);
  REQUIRE(res.found());
  CHECK(check_ham_cycle(CubeShape{2, 4}, res.cycle, Matching{}).ok);
}

TEST_CASE("spanning path between opposite corners of Q_1^4 is impossible") {
  // (0) -> (2) on a 4-cycle cannot span: same parity class
  ConstraintSpec spec;
  spec.region = Region::whole(CubeShape{1, 4});
  spec.endpoint_pairs = {{Vertex{0}, Vertex{2}}};
  auto res = search(spec);
  CHECK(res.status == SearchStatus::Exhausted);
  auto oracle = enumerate(spec);
  CHECK(oracle.empty());
}

TEST_CASE("cycle through any single edge of Q_3^4") {
  CubeShape s{3, 4};
  Cube cube(s);
  Matching m = make_matching(s, {make_edge(s, Vertex{1, 1, 1}, Vertex{1, 1, 2})});
  ConstraintSpec spec;
  spec.region = Region::whole(s);
  spec.required = m;
  auto res = search(cube, spec);
  REQUIRE(res.found());
  CHECK(check_ham_cycle(s, res.cycle, m).ok);
}

TEST_CASE("oracle counts") {
  SECTION("Q_1^4 has exactly one Hamiltonian cycle") {
    ConstraintSpec spec;
    spec.region = Region::whole(CubeShape{1, 4});
    auto res = enumerate(spec);
    CHECK(res.complete);
    CHECK(res.cycles.size() == 1);
  }
  SECTION("Q_2^3 regression count") {
    ConstraintSpec spec;
    spec.region = Region::whole(CubeShape{2, 3});
    auto res = enumerate(spec);
    CHECK(res.complete);
    CHECK(res.cycles.size() == 48);  // frozen from the first exhaustive run
  }
}

TEST_CASE("oracle refuses oversize regions") {
  ConstraintSpec spec;
  spec.region = Region::whole(CubeShape{3, 4});
  CHECK_THROWS_AS(enumerate(spec), CapabilityError);
}

TEST_CASE("Q_2^4 with a 3-edge linear forest is coverable") {
  CubeShape s{2, 4};
  Matching f;
  f.edges = {make_edge(s, Vertex{0, 0}, Vertex{1, 0}),
             make_edge(s, Vertex{1, 0}, Vertex{2, 0}),
             make_edge(s, Vertex{2, 0}, Vertex{3, 0})};
  std::sort(f.edges.begin(), f.edges.end());
  ConstraintSpec spec;
  spec.region = Region::whole(s);
  spec.required = f;
  auto res = enumerate(spec, 5);
  CHECK_FALSE(res.empty());
  auto found = search(spec);
  REQUIRE(found.found());
  CHECK(check_ham_cycle(s, found.cycle, f).ok);
}

TEST_CASE("inconsistent specs are input errors") {
  CubeShape s{2, 4};
  ConstraintSpec spec;
  spec.region = Region::whole(s);
  SECTION("endpoint pair with equal vertices") {
    spec.endpoint_pairs = {{Vertex{0, 0}, Vertex{0, 0}}};
    CHECK_THROWS_AS(search(spec), InputError);
  }
  SECTION("overlapping endpoint pairs") {
    spec.endpoint_pairs = {{Vertex{0, 0}, Vertex{1, 0}}, {Vertex{0, 0}, Vertex{0, 1}}};
    CHECK_THROWS_AS(search(spec), InputError);
  }
  SECTION("endpoint outside region") {
    spec.region = Region::whole(s).minus({Vertex{0, 0}});
    spec.endpoint_pairs = {{Vertex{0, 0}, Vertex{1, 0}}};
    CHECK_THROWS_AS(search(spec), InputError);
  }
  SECTION("required edges not a linear forest") {
    std::vector<Edge> sq = {make_edge(s, Vertex{0, 0}, Vertex{1, 0}),
                            make_edge(s, Vertex{1, 0}, Vertex{1, 1}),
                            make_edge(s, Vertex{1, 1}, Vertex{0, 1}),
                            make_edge(s, Vertex{0, 1}, Vertex{0, 0})};
    spec.required.edges = sq;
    std::sort(spec.required.edges.begin(), spec.required.edges.end());
    CHECK_THROWS_AS(search(spec), InputError);
  }
}

TEST_CASE("determinism at seed 0") {
  CubeShape s{2, 5};
  ConstraintSpec spec;
  spec.region = Region::whole(s);
  spec.endpoint_pairs = {{Vertex{0, 0}, Vertex{2, 3}}};
  auto a = search(spec);
  auto b = search(spec);
  REQUIRE(a.found());
  REQUIRE(b.found());
  CHECK(a.paths.paths == b.paths.paths);
}

TEST_CASE("budget exceeded is reported distinctly") {
  ConstraintSpec spec;
  spec.region = Region::whole(CubeShape{3, 4});
  SearchBudget tiny;
  tiny.max_nodes = 5;
  auto res = search(spec, tiny);
  CHECK(res.status == SearchStatus::BudgetExceeded);
}

using kcube::gen::tiny_corpus;

TEST_CASE("search agrees with the oracle on a tiny corpus") {
  auto corpus = tiny_corpus(60, 12345);
  for (const auto& spec : corpus) {
    Cube cube(spec.region.shape);
    auto oracle = enumerate(cube, spec, 1);
    auto res = search(cube, spec);
    REQUIRE(res.status != SearchStatus::BudgetExceeded);
    bool sat_oracle = !oracle.empty();
    bool sat_search = res.found();
    CHECK(sat_oracle == sat_search);
    if (res.found()) {
      if (spec.endpoint_pairs.empty())
        CHECK(check_cycle_in_region(cube, spec.region, res.cycle.order, spec.required).ok);
      else
        CHECK(check_path_system(cube, res.paths, spec.endpoint_pairs, spec.required).ok);
    }
  }
}

TEST_CASE("pruning rules never change SAT answers") {
  auto corpus = tiny_corpus(25, 777);
  for (const auto& spec : corpus) {
    Cube cube(spec.region.shape);
    auto base = search(cube, spec);
    for (int off = 0; off < 3; ++off) {
      PruneRules rules;
      if (off == 0) rules.degree_cut = false;
      if (off == 1) rules.connectivity_cut = false;
      if (off == 2) rules.chain_closure = false;
      auto res = search(cube, spec, SearchBudget{}, rules);
      CHECK(res.found() == base.found());
      if (res.found() && spec.endpoint_pairs.empty())
        CHECK(check_cycle_in_region(cube, spec.region, res.cycle.order, spec.required).ok);
      if (res.found() && !spec.endpoint_pairs.empty())
        CHECK(check_path_system(cube, res.paths, spec.endpoint_pairs, spec.required).ok);
    }
  }
}
