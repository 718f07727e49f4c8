#pragma once

#include "geosoc/core.hpp"

namespace geosoc::testing {

enum Member : int { a, b, c, d, e, f };

struct Fixture {
  SocialGraph g;
  SpatialDataset data;
};

// Edges a-c, a-d, c-d, b-e, c-e, e-f; distances to the single venue are
// a=5, b=6, c=10, d=12, e=19, f=20.
inline Fixture g1() {
  return {SocialGraph(6, {{a, c}, {a, d}, {c, d}, {b, e}, {c, e}, {e, f}}),
          SpatialDataset({{5, 0}, {0, 6}, {-10, 0}, {0, -12}, {19, 0}, {0, 20}}, {{0, 0}})};
}

// Merge example: p=4, k=1. Distances a=1, b=2, c=3, d=4, e=5, f=7.
// {a,b,c,d} costs 10 and is feasible on average; {a,c,d,e} costs 13.
inline Fixture merge_example() {
  return {SocialGraph(6, {{a, c}, {c, d}, {a, d}, {b, d}, {c, e}, {d, e}}),
          SpatialDataset({{1, 0}, {0, 2}, {-3, 0}, {0, -4}, {3, 4}, {7, 0}}, {{0, 0}})};
}

// Three venues q1, q2, q3 (ids 0..2); triangle a,b,c sits at distances 1, 2, 3
// from q2, and the optimum is <{a,b,c}, q2> with total 6.
inline Fixture sfgp_example() {
  return {SocialGraph(6, {{a, b}, {a, c}, {b, c}, {c, d}, {d, e}, {e, f}}),
          SpatialDataset({{1, 0}, {0, 2}, {0, -3}, {0, -4}, {10, 10}, {12, 10}}, {{1, -2}, {0, 0}, {-1, -2}})};
}

// Members a..d and venues q1..q4 (ids 0..3). The closest pair is (d, q4); with
// S_I = {d} the best next pair is (a, q3).
inline Fixture seed_example() {
  return {SocialGraph(4, {{a, b}, {a, d}, {b, d}, {c, d}}),
          SpatialDataset({{4.2, 0}, {-2.5, 0}, {0, 4}, {1, 0}}, {{10, 10}, {-10, 10}, {3, 0}, {0, 0}})};
}

}  // namespace geosoc::testing
