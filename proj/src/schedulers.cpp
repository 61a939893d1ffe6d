#include "wpcn/schedulers.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "wpcn/errors.hpp"
#include "wpcn/penalty.hpp"
#include "wpcn/power_control.hpp"

namespace wpcn {

namespace {

void require_users(std::size_t n) {
  if (n == 0) throw DomainError("scheduler called with an empty user set");
}

PowerDecision decide_at(const UserLink& l, double t) {
  return optimal_power(l, l.battery_j + l.harvest_w * t);
}

// Repeatedly picks the user preferred by `better(candidate, incumbent)` at
// the current frame time and appends it.
template <class Better>
Schedule greedy(std::span<const UserLink> links, const char* tag, Better better) {
  require_users(links.size());
  Schedule out;
  out.algorithm_tag = tag;
  std::vector<bool> done(links.size(), false);
  double t = 0.0;
  for (std::size_t step = 0; step < links.size(); ++step) {
    std::size_t pick = links.size();
    PowerDecision pick_decision;
    for (std::size_t j = 0; j < links.size(); ++j) {
      if (done[j]) continue;
      const PowerDecision d = decide_at(links[j], t);
      if (pick == links.size() || better(links[j], d, links[pick], pick_decision)) {
        pick = j;
        pick_decision = d;
      }
    }
    done[pick] = true;
    const UserLink& l = links[pick];
    out.order.push_back(l.id);
    out.allocations.push_back({l.id, t, pick_decision.duration_s, pick_decision.power_w,
                               pick_decision.power_w * pick_decision.duration_s});
    t += pick_decision.duration_s;
  }
  out.total_length_s = t;
  return out;
}

std::vector<UserLink> sorted_by_id(std::span<const UserLink> links) {
  std::vector<UserLink> sorted(links.begin(), links.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const UserLink& a, const UserLink& b) { return a.id < b.id; });
  return sorted;
}

Schedule replay(const std::vector<UserLink>& links, const std::vector<int>& order_idx,
                const char* tag, std::uint64_t nodes) {
  std::vector<UserLink> ordered;
  ordered.reserve(order_idx.size());
  for (int i : order_idx) ordered.push_back(links[static_cast<std::size_t>(i)]);
  Schedule s = evaluate_links(ordered, PowerCap::enforced);
  s.algorithm_tag = tag;
  s.node_count = nodes;
  return s;
}

struct BruteForce {
  const std::vector<UserLink>& links;
  std::vector<int> prefix;
  std::vector<bool> used;
  std::vector<int> best;
  double best_len = std::numeric_limits<double>::infinity();
  std::uint64_t leaves = 0;

  void run(double t) {
    if (prefix.size() == links.size()) {
      ++leaves;
      if (t < best_len) {
        best_len = t;
        best = prefix;
      }
      return;
    }
    for (std::size_t j = 0; j < links.size(); ++j) {
      if (used[j]) continue;
      const double tau = decide_at(links[j], t).duration_s;
      used[j] = true;
      prefix.push_back(static_cast<int>(j));
      run(t + tau);
      prefix.pop_back();
      used[j] = false;
    }
  }
};

struct SearchNode {
  std::vector<int> prefix;  // indices into the id-sorted links
  double elapsed_s = 0.0;
  double last_penalty_s = 0.0;
};

bool same_parent(const SearchNode& a, const SearchNode& b) {
  return std::equal(a.prefix.begin(), a.prefix.end() - 1, b.prefix.begin(), b.prefix.end() - 1);
}

}  // namespace

std::vector<UserLink> make_links(std::span<const UserProfile> users, const SystemParams& sys) {
  std::vector<UserLink> links;
  links.reserve(users.size());
  for (const auto& u : users) links.push_back(make_link(u, sys));
  return links;
}

Schedule mpa(std::span<const UserLink> links) {
  return greedy(links, "MPA",
                [](const UserLink& a, const PowerDecision& da, const UserLink& b,
                   const PowerDecision& db) {
                  const double pa = da.duration_s - a.t_min_s;
                  const double pb = db.duration_s - b.t_min_s;
                  return pa < pb || (pa == pb && a.id < b.id);
                });
}

Schedule mtpa(std::span<const UserLink> links) {
  return greedy(links, "MTPA",
                [](const UserLink& a, const PowerDecision& da, const UserLink& b,
                   const PowerDecision& db) {
                  return da.power_w > db.power_w || (da.power_w == db.power_w && a.id < b.id);
                });
}

Schedule bfa(std::span<const UserLink> links, std::size_t cap) {
  require_users(links.size());
  if (links.size() > cap) {
    throw SizeCapExceeded("bfa: " + std::to_string(links.size()) + " users exceed the cap of " +
                          std::to_string(cap));
  }
  const std::vector<UserLink> sorted = sorted_by_id(links);
  BruteForce search{sorted, {}, std::vector<bool>(sorted.size(), false), {}};
  search.run(0.0);
  return replay(sorted, search.best, "BFA", search.leaves);
}

Schedule fpa(std::span<const UserLink> links, SearchStats* stats) {
  require_users(links.size());
  const std::vector<UserLink> sorted = sorted_by_id(links);
  const std::size_t n = sorted.size();

  // local.evaluated counts nodes taken from the open set: every n_min and
  // every leaf examined.
  SearchStats local;
  auto make_child = [&](const SearchNode* parent, int j) {
    SearchNode child;
    const double t = parent ? parent->elapsed_s : 0.0;
    const UserLink& l = sorted[static_cast<std::size_t>(j)];
    const double tau = decide_at(l, t).duration_s;
    if (parent) child.prefix = parent->prefix;
    child.prefix.push_back(j);
    child.elapsed_s = t + tau;
    child.last_penalty_s = tau - l.t_min_s;
    return child;
  };

  // open[s] holds the open nodes of size s.
  std::vector<std::vector<SearchNode>> open(n + 1);
  for (std::size_t j = 0; j < n; ++j) open[1].push_back(make_child(nullptr, static_cast<int>(j)));

  double best_len = std::numeric_limits<double>::infinity();
  std::vector<int> best;

  for (;;) {
    std::size_t s_max = n;
    while (s_max > 0 && open[s_max].empty()) --s_max;
    if (s_max == 0) break;
    auto& level = open[s_max];

    if (s_max == n) {
      const auto leaf = std::min_element(level.begin(), level.end(),
                                         [](const SearchNode& a, const SearchNode& b) {
                                           return a.prefix < b.prefix;
                                         });
      if (leaf->elapsed_s < best_len) {
        best_len = leaf->elapsed_s;
        best = leaf->prefix;
      }
      level.erase(leaf);
      ++local.evaluated;
      continue;
    }

    auto min_it = std::min_element(level.begin(), level.end(),
                                   [](const SearchNode& a, const SearchNode& b) {
                                     if (a.last_penalty_s != b.last_penalty_s) {
                                       return a.last_penalty_s < b.last_penalty_s;
                                     }
                                     return a.prefix < b.prefix;
                                   });
    SearchNode n_min = std::move(*min_it);
    ++local.evaluated;
    level.erase(min_it);

    if (n_min.last_penalty_s <= kZeroPenaltyTolS) {
      local.sibling_prunes += std::erase_if(
          level, [&](const SearchNode& other) { return same_parent(other, n_min); });
    }
    if (n_min.elapsed_s >= best_len) {
      ++local.bound_prunes;
    } else {
      std::vector<bool> used(n, false);
      for (int i : n_min.prefix) used[static_cast<std::size_t>(i)] = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (!used[j]) open[s_max + 1].push_back(make_child(&n_min, static_cast<int>(j)));
      }
    }
  }
  if (stats) *stats = local;
  return replay(sorted, best, "FPA", local.evaluated);
}

Schedule mpa(std::span<const UserProfile> users, const SystemParams& sys) {
  return mpa(make_links(users, sys));
}

Schedule mtpa(std::span<const UserProfile> users, const SystemParams& sys) {
  return mtpa(make_links(users, sys));
}

Schedule bfa(std::span<const UserProfile> users, const SystemParams& sys, std::size_t cap) {
  return bfa(make_links(users, sys), cap);
}

Schedule fpa(std::span<const UserProfile> users, const SystemParams& sys) {
  return fpa(make_links(users, sys));
}

Schedule fixed_order(std::span<const UserProfile> users, const SystemParams& sys,
                     bool enforce_cap) {
  require_users(users.size());
  return enforce_cap ? evaluate_order(users, sys) : evaluate_order_pca(users, sys);
}

}  // namespace wpcn
