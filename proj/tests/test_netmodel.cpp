#include <doctest.h>

#include <queue>

#include "pflin/errors.hpp"
#include "pflin/linalg.hpp"
#include "pflin/netmodel.hpp"
#include "support/cases.hpp"
#include "support/oracles.hpp"

using namespace pflin;
using namespace pflin::testing;

namespace {

bool contains(const std::vector<std::string>& errs, const std::string& needle) {
  for (const auto& e : errs) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

// BFS over non-slack buses using the branch list directly.
bool bfs_connected_without_slack(const NetworkCase& c) {
  const int n = non_slack_count(c);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& br : c.branches) {
    if (br.from <= n && br.to <= n) {
      adj[br.from - 1].push_back(br.to - 1);
      adj[br.to - 1].push_back(br.from - 1);
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n));
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == n;
}

}  // namespace

TEST_CASE("two-node ladder partitions as a single series branch") {
  const auto p = build_admittance(two_node_ladder({1.0, -5.0}));
  REQUIRE(p.size() == 1);
  CHECK(p.Y(0, 0) == Complex(1.0, -5.0));
  CHECK(p.Ybar(0) == Complex(-1.0, 5.0));
  CHECK(p.y_slack == Complex(1.0, -5.0));
  CHECK(std::abs(extract_shunts(p)(0)) == 0.0);
  CHECK(std::abs(p.Ysh(0)) == 0.0);
}

TEST_CASE("ZIP impedance is the only shunt source") {
  NetworkCase c = two_node_ladder({1.0, -5.0});
  c.buses[0].zip.shunt_admittance = {0.02, 0.01};
  const auto p = build_admittance(c);
  CHECK(std::abs(p.Ysh(0) - Complex(0.02, 0.01)) < 1e-15);
}

TEST_CASE("three-bus ring matches per-element stamping") {
  NetworkCase c;
  c.buses = {zip_bus(1, {}, {}, {0.01, -0.02}), zip_bus(2, {}, {}, {0.0, 0.03}), slack_bus_at(3)};
  c.branches = {branch(1, 2, {2.0, -8.0}, {0.0, 0.04}), branch(2, 3, {1.5, -4.0}, {0.0, 0.02}),
                branch(3, 1, {3.0, -9.0}), branch(1, 2, {0.5, -1.0})};  // parallel branch
  const auto full = build_admittance(c).full();
  const auto oracle = stamp_full_matrix(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(full(i, j) - oracle[i][j]) < 1e-14);
}

TEST_CASE("random cases: stamping, shunt extraction and symmetry") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 9;
    const auto c = random_feeder(rng, n, {.meshed = true});
    const auto p = build_admittance(c);
    const CMatrix full = p.full();
    const auto oracle = stamp_full_matrix(c);
    const auto shunts = stamp_shunts(c);
    CHECK((full - full.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) CHECK(std::abs(full(i, j) - oracle[i][j]) < 1e-12);
    const CVector ysh = extract_shunts(p);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(ysh(k) - shunts[k]) <= 1e-12);
      CHECK(std::abs(p.Ysh(k) - (p.Y.row(k).sum() + p.Ybar(k))) <= 1e-12);
    }
  }
}

TEST_CASE("validation reports every violation") {
  NetworkCase c = two_node_ladder({1.0, -5.0});
  c.buses[0].kind = BusKind::Slack;
  c.buses[0].slack = SlackSetpoint{};
  auto errs = validate(c);
  CHECK(contains(errs, "exactly one slack"));

  NetworkCase d = radial_feeder4();
  d.branches.pop_back();  // bus 4 isolated
  d.branches.push_back(branch(2, 2, {1.0, -1.0}));
  d.branches.push_back(branch(1, 9, {1.0, -1.0}));
  d.branches.push_back(branch(1, 3, {}));
  errs = validate(d);
  CHECK(contains(errs, "disconnected"));
  CHECK(contains(errs, "same bus"));
  CHECK(contains(errs, "unknown bus"));
  CHECK(contains(errs, "series admittance is zero"));
  CHECK_THROWS_AS(build_admittance(d), ValidationError);

  NetworkCase e = radial_feeder4();
  e.buses[1].id = 1;  // duplicate id
  CHECK(contains(validate(e), "contiguous"));

  NetworkCase f = radial_feeder4();
  f.buses[0].pv = PvSetpoint{0.1, 1.0};
  f.buses.back().slack->vmag = -1.0;
  errs = validate(f);
  CHECK(contains(errs, "ZIP bus cannot carry setpoints"));
  CHECK(contains(errs, "positive"));
}

TEST_CASE("lemma1 structure on the two-node ladder") {
  const auto p = build_admittance(two_node_ladder({1.0, -5.0}));
  const auto d = check_lemma1_structure(p, CVector::Zero(1), {1.0, 0.0});
  CHECK(d.connected);
  CHECK(d.weakly_dominant);
  CHECK(d.strict_at_slack_adjacent);
  CHECK(d.noload_nonzero);
  CHECK(d.verdict);
}

TEST_CASE("lemma1 structure on a radial feeder matches graph traversal") {
  const auto c = radial_feeder4();
  const auto p = build_admittance(c);
  const auto d = check_lemma1_structure(p, load_currents(c), slack_voltage(c));
  CHECK(d.connected == bfs_connected_without_slack(c));
  CHECK(d.connected);
  CHECK(d.slack_adjacent == std::vector<int>{0});
  CHECK(d.weakly_dominant);
  CHECK(d.strict_at_slack_adjacent);
  // Interior rows hold with equality (same R/X everywhere), so strictness
  // is only at the slack-adjacent bus.
  for (int l = 1; l < 4; ++l) {
    double off = 0.0;
    for (int m = 0; m < 4; ++m)
      if (m != l) off += std::abs(p.Y(l, m));
    CHECK(std::abs(std::abs(p.Y(l, l)) - off) <= 1e-12 * off);
  }
  CHECK(d.verdict);
  CHECK_FALSE(ComplexLu(p.Y).singular());
}

TEST_CASE("load current equal to Ybar*V_slack zeroes the no-load voltage") {
  const auto c = radial_feeder4();
  const auto p = build_admittance(c);
  const Complex vs = slack_voltage(c);
  const CVector il = p.Ybar * vs;
  const auto d = check_lemma1_structure(p, il, vs);
  CHECK_FALSE(d.verdict);
  CHECK_FALSE(d.noload_nonzero);
  REQUIRE(d.reasons.size() == 1);
  CHECK(structure_reason_name(d.reasons[0]) == "NO_LOAD_VOLTAGE_ZERO");
}

TEST_CASE("removing the slack can disconnect Y even when the case is connected") {
  NetworkCase c;
  c.buses = {zip_bus(1), zip_bus(2), slack_bus_at(3)};
  c.branches = {branch(1, 3, {1.0, -4.0}), branch(2, 3, {1.0, -3.0})};
  const auto p = build_admittance(c);
  const auto d = check_lemma1_structure(p, CVector::Zero(2), {1.0, 0.0});
  CHECK_FALSE(d.connected);
  CHECK_FALSE(bfs_connected_without_slack(c));
  CHECK_FALSE(d.verdict);
}

TEST_CASE("verdict implies a nonsingular Y factorization") {
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_feeder(rng, 2 + trial % 12, {.with_shunts = false, .meshed = trial % 2 == 1});
    // Same R/X on every branch keeps rows dominant, so the verdict can hold.
    for (auto& br : c.branches) br.series_admittance = std::abs(br.series_admittance) * Complex{0.6, -0.8};
    const auto p = build_admittance(c);
    const auto d = check_lemma1_structure(p, load_currents(c), slack_voltage(c));
    if (d.verdict) {
      ++certified;
      CHECK_FALSE(ComplexLu(p.Y).singular());
    }
  }
  CHECK(certified > 50);
}
