#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "support.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/penalty.hpp"
#include "wpcn/power_control.hpp"
#include "wpcn/schedulers.hpp"

using namespace wpcn;
using wpcn::test::rel_diff;

namespace {

// Shortest fixed-order length over every order whose first user is `first`
// (any first user when first < 0).
double best_over_orders(const std::vector<UserLink>& links, int first = -1) {
  std::vector<std::size_t> idx(links.size());
  std::iota(idx.begin(), idx.end(), 0);
  double best = INFINITY;
  do {
    if (first >= 0 && links[idx[0]].id != first) continue;
    std::vector<UserLink> ordered;
    for (auto i : idx) ordered.push_back(links[i]);
    best = std::min(best, evaluate_links(ordered, PowerCap::enforced).total_length_s);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

double lemma5_gap(const Schedule& s, const std::vector<UserLink>& links) {
  double sum_tau = 0.0, sum_rho = 0.0, sum_tmin = 0.0;
  for (const auto& a : s.allocations) {
    const auto& l = *std::find_if(links.begin(), links.end(),
                                  [&](const UserLink& x) { return x.id == a.user_id; });
    sum_tau += a.duration_s;
    sum_rho += penalty(l, a.start_time_s);
    sum_tmin += l.t_min_s;
  }
  return rel_diff(sum_tau - sum_rho, sum_tmin);
}

UserProfile plain_user(int id, double battery) {
  UserProfile u;
  u.id = id;
  u.h_down = 1e-4;
  u.g_up = 1e-4;
  u.battery_j = battery;
  return u;
}

}  // namespace

TEST_CASE("MPA starts with the user of smaller initial penalty") {
  SystemParams sys;
  const std::vector<UserProfile> users{plain_user(2, 1e-9), plain_user(1, 1e-8)};
  const auto links = make_links(users, sys);
  REQUIRE(penalty(links[1], 0.0) < penalty(links[0], 0.0));
  const Schedule s = mpa(users, sys);
  CHECK(s.order == std::vector<int>{1, 2});
  CHECK(s.algorithm_tag == "MPA");
}

TEST_CASE("a zero-penalty user goes first under MPA") {
  const Realization inst = test::default_instance(6, 12);
  auto users = inst.users;
  users[4].battery_j = 1.0;
  const Schedule s = mpa(users, inst.sys);
  CHECK(penalty(make_link(users[4], inst.sys), 0.0) == 0.0);
  CHECK(s.order.front() == users[4].id);
}

TEST_CASE("MTPA schedules a user that can afford the cap") {
  const Realization inst = test::default_instance(6, 14);
  auto users = inst.users;
  users[2].battery_j = 1.0;
  const Schedule s = mtpa(users, inst.sys);
  CHECK(s.order.front() == users[2].id);
  CHECK(s.allocations.front().power_w == inst.sys.p_max_w);
  CHECK(s.algorithm_tag == "MTPA");
}

TEST_CASE("identical users give the same length under any order") {
  SystemParams sys;
  std::vector<UserProfile> users;
  for (int i = 0; i < 3; ++i) users.push_back(plain_user(i, 1e-9));
  const double m = mtpa(users, sys).total_length_s;
  const double b = bfa(users, sys).total_length_s;
  const double o = evaluate_order(users, sys).total_length_s;
  std::reverse(users.begin(), users.end());
  CHECK(rel_diff(m, b) <= 1e-12);
  CHECK(rel_diff(o, b) <= 1e-12);
  CHECK(rel_diff(evaluate_order(users, sys).total_length_s, b) <= 1e-12);
}

TEST_CASE("BFA on one user and its node count") {
  SystemParams sys;
  const std::vector<UserProfile> one{plain_user(0, 1e-9)};
  const Schedule s = bfa(one, sys);
  CHECK(s.order == std::vector<int>{0});
  CHECK(*s.node_count == 1);
  const Realization inst = test::default_instance(5, 2);
  CHECK(*bfa(inst.users, inst.sys).node_count == 120);
}

TEST_CASE("BFA refuses instances above its cap") {
  const Realization inst = test::default_instance(5, 2);
  CHECK_THROWS_AS(bfa(inst.users, inst.sys, 4), SizeCapExceeded);
}

TEST_CASE("schedulers reject an empty user set") {
  SystemParams sys;
  const std::vector<UserProfile> none;
  CHECK_THROWS_AS(mpa(none, sys), DomainError);
  CHECK_THROWS_AS(mtpa(none, sys), DomainError);
  CHECK_THROWS_AS(fpa(none, sys), DomainError);
  CHECK_THROWS_AS(bfa(none, sys), DomainError);
}

TEST_CASE("BFA returns the shortest order by enumeration") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Realization inst = test::default_instance(5, seed);
    const auto links = make_links(inst.users, inst.sys);
    CHECK(bfa(links).total_length_s == best_over_orders(links));
  }
}

TEST_CASE("FPA equals BFA on seeded instances") {
  for (int n = 2; n <= 7; ++n) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const Realization inst = test::default_instance(n, seed * 131 + n);
      const auto links = make_links(inst.users, inst.sys);
      const double f = fpa(links).total_length_s;
      const double b = bfa(links).total_length_s;
      CHECK(rel_diff(f, b) <= 1e-12);
    }
  }
}

TEST_CASE("FPA is never worse than the heuristics or the fixed order") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Realization inst = test::default_instance(8, seed);
    const auto links = make_links(inst.users, inst.sys);
    const double f = fpa(links).total_length_s;
    CHECK(f <= mpa(links).total_length_s * (1.0 + 1e-12));
    CHECK(f <= mtpa(links).total_length_s * (1.0 + 1e-12));
    CHECK(f <= fixed_order(inst.users, inst.sys, true).total_length_s * (1.0 + 1e-12));
  }
}

TEST_CASE("FPA walks a single branch when every first child has zero penalty") {
  SystemParams sys;
  for (int n : {2, 3, 5, 8}) {
    std::vector<UserProfile> users;
    for (int i = 0; i < n; ++i) users.push_back(plain_user(i, 1.0));
    SearchStats stats;
    const Schedule s = fpa(make_links(users, sys), &stats);
    // One node per level, the leaf included; never more than N(N+1)/2 - (N-1).
    CHECK(*s.node_count == static_cast<std::uint64_t>(n));
    CHECK(*s.node_count <= static_cast<std::uint64_t>(n * (n + 1) / 2 - (n - 1)));
    CHECK(stats.bound_prunes == 0);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    CHECK(s.order == ids);
  }
}

TEST_CASE("both pruning rules fire on a four-user instance") {
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 2000 && !found; ++seed) {
    ExperimentConfig cfg;
    cfg.topology.n_users = 4;
    cfg.user_template.battery_j = 3e-8;
    const Realization inst = draw_realization(cfg, seed);
    const auto links = make_links(inst.users, inst.sys);
    SearchStats stats;
    const Schedule s = fpa(links, &stats);
    if (stats.sibling_prunes > 0 && stats.bound_prunes > 0) {
      found = true;
      CHECK(*s.node_count < 24);
      CHECK(s.total_length_s == bfa(links).total_length_s);
    }
  }
  CHECK(found);
}

TEST_CASE("some optimal order starts with a zero-penalty user") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 400 && checked < 30; ++seed) {
    ExperimentConfig cfg;
    cfg.topology.n_users = 6;
    cfg.user_template.battery_j = 3e-8;
    const Realization inst = draw_realization(cfg, seed);
    const auto links = make_links(inst.users, inst.sys);
    std::vector<int> zero;
    for (const auto& l : links) {
      if (penalty(l, 0.0) <= kZeroPenaltyTolS) zero.push_back(l.id);
    }
    if (zero.empty() || zero.size() == links.size()) continue;
    ++checked;
    double forced = INFINITY;
    for (int z : zero) forced = std::min(forced, best_over_orders(links, z));
    CHECK(rel_diff(forced, bfa(links).total_length_s) <= 1e-12);
  }
  CHECK(checked == 30);
}

TEST_CASE("objective offset identity holds for every scheduler") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Realization inst = test::default_instance(7, seed);
    const auto links = make_links(inst.users, inst.sys);
    for (const Schedule& s : {mpa(links), mtpa(links), fpa(links), bfa(links),
                              fixed_order(inst.users, inst.sys, true)}) {
      CHECK(lemma5_gap(s, links) <= 1e-10);
    }
  }
}

TEST_CASE("greedy schedulers are deterministic") {
  const Realization inst = test::default_instance(10, 77);
  const Schedule a = mpa(inst.users, inst.sys), b = mpa(inst.users, inst.sys);
  CHECK(a.order == b.order);
  CHECK(a.total_length_s == b.total_length_s);
  const Schedule c = mtpa(inst.users, inst.sys), d = mtpa(inst.users, inst.sys);
  CHECK(c.order == d.order);
  CHECK(c.total_length_s == d.total_length_s);
}

TEST_CASE("scheduler output is replayed through the fixed-order evaluator") {
  const Realization inst = test::default_instance(6, 9);
  const auto links = make_links(inst.users, inst.sys);
  for (const Schedule& s : {mpa(links), mtpa(links), fpa(links)}) {
    std::vector<UserProfile> ordered;
    for (int id : s.order) ordered.push_back(inst.users[static_cast<std::size_t>(id)]);
    CHECK(rel_diff(s.total_length_s, evaluate_order(ordered, inst.sys).total_length_s) <= 1e-12);
    double t = 0.0;
    for (const auto& a : s.allocations) {
      CHECK(a.start_time_s == t);
      t += a.duration_s;
    }
    CHECK(rel_diff(t, s.total_length_s) <= 1e-12);
  }
}

TEST_CASE("fixed order keeps the input order and tags the baseline") {
  const Realization inst = test::default_instance(4, 6);
  auto users = inst.users;
  std::reverse(users.begin(), users.end());
  const Schedule o = fixed_order(users, inst.sys, true);
  const Schedule p = fixed_order(users, inst.sys, false);
  CHECK(o.algorithm_tag == "OTPA");
  CHECK(p.algorithm_tag == "PCA");
  CHECK(o.order == std::vector<int>{3, 2, 1, 0});
  CHECK(p.total_length_s <= o.total_length_s);
  const std::vector<UserProfile> one{users[0]};
  CHECK(fixed_order(one, inst.sys, true).total_length_s == fpa(one, inst.sys).total_length_s);
}
