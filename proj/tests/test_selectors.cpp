#include <random>
#include <sstream>

#include "doctest.h"
#include "mbcast/selectors.hpp"

using namespace mbc;

TEST_CASE("ssf trivial shapes") {
  auto f1 = build_ssf(8, 1);
  CHECK(f1.sets.size() == 1);
  CHECK(f1.sets[0].size() == 8);
  CHECK(verify_ssf(f1, 8, 1));

  auto f2 = build_ssf(4, 4);
  CHECK(f2.sets.size() == 4);
  CHECK(verify_ssf(f2, 4, 4));
  CHECK_THROWS(build_ssf(4, 5));
  CHECK_THROWS(build_ssf(4, 0));
}

TEST_CASE("verify ssf rejects non-selective families") {
  SetFamily whole;
  whole.N = 6;
  whole.x = 2;
  whole.sets = {{1, 2, 3, 4, 5, 6}};
  CHECK_FALSE(verify_ssf(whole, 6, 2));

  SetFamily singles;
  singles.N = 6;
  singles.x = 4;
  for (uint32_t i = 1; i <= 6; ++i) singles.sets.push_back({i});
  CHECK(verify_ssf(singles, 6, 4));
}

TEST_CASE("built ssf families verify and stay within the length constant") {
  for (uint32_t N : {8u, 16u}) {
    for (uint32_t x = 1; x <= 8 && x <= N; ++x) {
      auto f = build_ssf(N, x);
      CHECK(verify_ssf(f, N, x));
      double bound = kSsfLengthConstant * double(x) * x * std::ceil(std::log2(double(N)));
      CHECK(double(f.sets.size()) <= bound);
    }
  }
  auto f = build_ssf(64, 3);
  CHECK(verify_ssf(f, 64, 3));
}

TEST_CASE("prime ssf verifies at scales the greedy cannot reach") {
  auto f = prime_ssf(64, 6);
  CHECK(detail::verify_ssf_hitting(f, 64, 6));
  auto g = prime_ssf(40, 4);
  CHECK(verify_ssf(g, 40, 4));
}

TEST_CASE("both verifier routes agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    uint32_t N = 10 + uint32_t(rng() % 6);
    uint32_t x = 2 + uint32_t(rng() % 3);
    SetFamily f;
    f.N = N;
    f.x = x;
    size_t len = 4 + rng() % 30;
    for (size_t i = 0; i < len; ++i) {
      std::vector<uint32_t> s;
      for (uint32_t id = 1; id <= N; ++id)
        if (rng() % x == 0) s.push_back(id);
      if (!s.empty()) f.sets.push_back(s);
    }
    if (f.sets.empty()) continue;
    CHECK(detail::verify_ssf_enum(f, N, x) == detail::verify_ssf_hitting(f, N, x));
  }
  auto built = build_ssf(16, 3);
  CHECK(detail::verify_ssf_enum(built, 16, 3));
  CHECK(detail::verify_ssf_hitting(built, 16, 3));
}

TEST_CASE("selector trivial shapes") {
  auto f1 = build_selector(4, 1, 1);
  CHECK(f1.sets.size() == 1);
  CHECK(f1.sets[0].size() == 4);
  CHECK(verify_selector(f1, 4, 1, 1));

  auto f2 = build_selector(8, 8, 8);
  CHECK(verify_selector(f2, 8, 8, 8));

  SetFamily empty;
  empty.N = 1;
  CHECK_FALSE(verify_selector(empty, 1, 1, 1));
  CHECK_THROWS(build_selector(8, 4, 5));
}

TEST_CASE("greedy selectors verify across the small grid") {
  auto f = build_selector(12, 6, 3);
  CHECK(verify_selector(f, 12, 6, 3));
  for (uint32_t x = 1; x <= 6; ++x)
    for (uint32_t y = 1; y <= x; ++y) {
      auto g = build_selector(16, x, y);
      CHECK(verify_selector(g, 16, x, y));
      if (2 * y <= x) {
        double bound = kSelectorLengthConstant * double(x) * 4.0;
        CHECK(double(g.sets.size()) <= bound);
      }
    }
}

TEST_CASE("an ssf acts as a full selector") {
  auto f = build_ssf(8, 3);
  f.kind = SetFamily::Kind::Selector;
  CHECK(verify_selector(f, 8, 3, 3));
}

TEST_CASE("builds are reproducible") {
  auto a = build_ssf(16, 4);
  auto b = build_ssf(16, 4);
  CHECK(a.sets == b.sets);
  auto c = build_selector(12, 4, 2);
  auto d = build_selector(12, 4, 2);
  CHECK(c.sets == d.sets);
  auto e = prime_ssf(200, 10);
  auto g = prime_ssf(200, 10);
  CHECK(e.sets == g.sets);
}

TEST_CASE("family text round trip and golden header") {
  SetFamily f;
  f.kind = SetFamily::Kind::Ssf;
  f.N = 5;
  f.x = 2;
  f.sets = {{1, 3, 5}, {2, 4}};
  CHECK(family_to_text(f) == "SSF 5 2 2\n1 3 5\n2 4\n");
  std::istringstream in(family_to_text(f));
  auto back = family_from_text(in);
  CHECK(back.sets == f.sets);
  CHECK(back.N == 5);

  SetFamily sel;
  sel.kind = SetFamily::Kind::Selector;
  sel.N = 4;
  sel.x = 2;
  sel.y = 1;
  sel.sets = {{1, 2}};
  CHECK(family_to_text(sel) == "SEL 4 2 1 1\n1 2\n");
  std::istringstream in2(family_to_text(sel));
  auto back2 = family_from_text(in2);
  CHECK(back2.y == 1);
}

TEST_CASE("schedule membership lookup") {
  auto f = build_ssf(16, 3);
  f.finalize();
  for (size_t i = 0; i < f.sets.size(); ++i)
    for (uint32_t id = 1; id <= 16; ++id) {
      bool member = std::find(f.sets[i].begin(), f.sets[i].end(), id) != f.sets[i].end();
      CHECK(f.contains(i, id) == member);
    }
}
