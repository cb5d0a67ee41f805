#include <doctest.h>

#include <functional>
#include <random>

#include "../support/random_ast.hpp"
#include "svagen/equiv.hpp"
#include "svagen/parser.hpp"
#include "svagen/printer.hpp"

using namespace svagen;
using namespace svagen::equiv;

namespace {

AssertionUnit P(const std::string& body) {
  ParseResult r = parse("@(posedge clk) " + body);
  REQUIRE_MESSAGE(r.ok(), body);
  return *r.unit;
}

Trace make_trace(std::vector<std::string> sigs, const std::vector<std::string>& rows) {
  // rows[s] is the per-cycle bit string of signal s
  Trace t;
  t.signals = std::move(sigs);
  const int L = static_cast<int>(rows.front().size());
  t.values.assign(L, std::vector<bool>(t.signals.size()));
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (int c = 0; c < L; ++c) t.values[c][s] = rows[s][c] == '1';
  }
  return t;
}

// Checks eval_assertion (both evaluators) against a hand-written predicate on every trace.
void against_oracle(const AssertionUnit& u, const std::vector<std::string>& sigs, int max_len,
                    const std::function<bool(const Trace&)>& oracle) {
  for (int L = 1; L <= max_len; ++L) {
    const std::uint64_t n = std::uint64_t{1} << (sigs.size() * L);
    for (std::uint64_t i = 0; i < n; ++i) {
      Trace t = trace_from_index(sigs, L, i);
      const bool want = oracle(t);
      if (eval_assertion(u, t) != want || reference::eval_assertion(u, t) != want) {
        FAIL(normalize(u) << " disagrees with oracle on\n" << format_trace_table(t));
      }
    }
  }
}

}  // namespace

TEST_CASE("eval_assertion on the documented traces") {
  CHECK(eval_assertion(P("a |-> b"), make_trace({"a", "b"}, {"1", "1"})));
  CHECK_FALSE(eval_assertion(P("a |-> ##1 b"), make_trace({"a", "b"}, {"10", "00"})));
  CHECK(eval_assertion(P("a |-> ##1 b"), make_trace({"a", "b"}, {"1", "0"})));
  CHECK_THROWS_AS(eval_assertion(P("a |-> c"), make_trace({"a", "b"}, {"1", "0"})), EquivError);
}

TEST_CASE("sampling functions at the start of the trace") {
  // Prior values are taken as 0.
  CHECK(eval_assertion(P("$rose(a)"), make_trace({"a"}, {"1"})));
  CHECK_FALSE(eval_assertion(P("$rose(a)"), make_trace({"a"}, {"0"})));
  CHECK_FALSE(eval_assertion(P("$past(a)"), make_trace({"a"}, {"1"})));
  CHECK(eval_assertion(P("!$past(a, 2)"), make_trace({"a"}, {"1"})));
  CHECK(eval_assertion(P("$stable(a)"), make_trace({"a"}, {"0"})));
}

TEST_CASE("hand oracles") {
  const std::vector<std::string> ab = {"a", "b"};
  auto bit = [](const Trace& t, int c, int s) { return bool(t.values[c][s]); };

  against_oracle(P("a |=> b"), ab, 6, [&](const Trace& t) {
    for (int c = 0; c + 1 < t.length(); ++c)
      if (bit(t, c, 0) && !bit(t, c + 1, 1)) return false;
    return true;
  });
  against_oracle(P("a ##2 b"), ab, 6, [&](const Trace& t) {
    for (int c = 0; c < t.length(); ++c) {
      if (!bit(t, c, 0)) return false;
      if (c + 2 < t.length() && !bit(t, c + 2, 1)) return false;
    }
    return true;
  });
  against_oracle(P("a |-> ##[1:2] b"), ab, 6, [&](const Trace& t) {
    // weak: a window that runs past the end is still pending
    for (int c = 0; c + 2 < t.length(); ++c)
      if (bit(t, c, 0) && !bit(t, c + 1, 1) && !bit(t, c + 2, 1)) return false;
    return true;
  });
  against_oracle(P("a |-> b[->1]"), ab, 6, [&](const Trace&) { return true; });
  against_oracle(P("$past(a, 2) |-> b"), ab, 6, [&](const Trace& t) {
    for (int c = 2; c < t.length(); ++c)
      if (bit(t, c - 2, 0) && !bit(t, c, 1)) return false;
    return true;
  });
  against_oracle(P("$rose(a) |-> b"), ab, 6, [&](const Trace& t) {
    for (int c = 0; c < t.length(); ++c) {
      const bool before = c > 0 && bit(t, c - 1, 0);
      if (bit(t, c, 0) && !before && !bit(t, c, 1)) return false;
    }
    return true;
  });
  against_oracle(P("a until b"), ab, 6, [&](const Trace& t) {
    // weak until from every start: the first cycle without a must have b
    for (int c = 0; c < t.length(); ++c) {
      for (int k = c; k < t.length(); ++k) {
        if (bit(t, k, 1)) break;
        if (!bit(t, k, 0)) return false;
      }
    }
    return true;
  });
  against_oracle(P("not (a ##1 b)"), ab, 6, [&](const Trace& t) {
    // strong match of a ##1 b must not exist from any start
    for (int c = 0; c + 1 < t.length(); ++c)
      if (bit(t, c, 0) && bit(t, c + 1, 1)) return false;
    return true;
  });

  const std::vector<std::string> abr = {"a", "b", "r"};
  AssertionUnit d = *parse("@(posedge clk) disable iff (r) a |=> b").unit;
  against_oracle(d, abr, 5, [&](const Trace& t) {
    for (int c = 0; c + 1 < t.length(); ++c) {
      if (bit(t, c, 0) && !bit(t, c + 1, 1) && !bit(t, c, 2) && !bit(t, c + 1, 2)) return false;
    }
    return true;
  });
}

TEST_CASE("closed-form delay chains") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> sigs = {"x", "y"};
  for (int round = 0; round < 60; ++round) {
    const int k = testgen::pick(rng, 1, 3);
    std::vector<std::string> xs;
    std::vector<int> ds;
    AstNode chain = AstNode::atom(sigs[testgen::pick(rng, 0, 1)]);
    xs.push_back(chain.name);
    for (int i = 0; i < k; ++i) {
      AstNode d = AstNode::binary(Kind::Delay, chain, AstNode::atom(sigs[testgen::pick(rng, 0, 1)]));
      d.lower = d.upper = testgen::pick(rng, 0, 2);
      ds.push_back(d.lower);
      xs.push_back(d.children[1].name);
      chain = std::move(d);
    }
    const int L = 8;
    for (std::uint64_t i = 0; i < (1u << 16); i += 37) {
      Trace t = trace_from_index(sigs, L, i);
      for (int start = 0; start < L; ++start) {
        std::vector<int> want;
        int at = start;
        bool ok = t.at(at, xs[0]);
        for (int j = 0; j < k && ok; ++j) {
          at += ds[j];
          ok = at < L && t.at(at, xs[j + 1]);
        }
        if (ok) want.push_back(at);
        CHECK(sequence_ends(chain, t, start, Pad::Bottom) == want);
        CHECK(reference::sequence_ends(chain, t, start, Pad::Bottom) == want);
      }
    }
  }
}

TEST_CASE("compiled and reference evaluators agree") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> sigs = {"a", "b", "c"};
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    AssertionUnit u = testgen::random_unit(rng, sigs, testgen::pick(rng, 1, 5), true);
    for (int j = 0; j < 20; ++j) {
      const int L = testgen::pick(rng, 1, 7);
      Trace t = trace_from_index(sigs, L, rng() & ((std::uint64_t{1} << (3 * L)) - 1));
      bool fast = false;
      try {
        fast = eval_assertion(u, t);
      } catch (const EquivError& e) {
        CHECK(e.code() == EquivError::Code::BudgetExceeded);
        continue;
      }
      INFO(normalize(u));
      INFO(format_trace_table(t));
      CHECK(fast == reference::eval_assertion(u, t));
      for (int start = 0; start <= L; ++start) {
        Verdict a = verdict_at(u.body, t, start);
        Verdict b = reference::verdict_at(u.body, t, start);
        CHECK(a.holds_weak == b.holds_weak);
        CHECK(a.holds_strong == b.holds_strong);
        CHECK((!a.holds_strong || a.holds_weak));
        Verdict n = verdict_at(AstNode::unary(Kind::PropNot, u.body), t, start);
        CHECK(n.holds_weak == !a.holds_strong);
        CHECK(n.holds_strong == !a.holds_weak);
      }
      ++compared;
    }
  }
  CHECK(compared > 4000);
}

TEST_CASE("relation fixtures") {
  CHECK(check_relation(P("a |=> b"), P("a |-> ##1 b")).relation == Relation::Equivalent);
  CHECK(check_relation(P("a |-> b && c"), P("a |-> b")).relation == Relation::Tightening);
  CHECK(check_relation(P("a |-> b || c"), P("a |-> b")).relation == Relation::Widening);
  auto none = check_relation(P("a |-> b"), P("a |-> c"));
  CHECK(none.relation == Relation::NoRelationship);
  REQUIRE(none.witness_gen_only);
  REQUIRE(none.witness_ref_only);
  CHECK(eval_assertion(P("a |-> b"), *none.witness_gen_only));
  CHECK_FALSE(eval_assertion(P("a |-> c"), *none.witness_gen_only));
  CHECK(eval_assertion(P("a |-> c"), *none.witness_ref_only));
  CHECK(none.length == 2);
  CHECK(none.signal_count() == 3);

  CHECK(check_relation(P("(a, v = b) |-> c"), P("a |-> c")).relation == Relation::Unsupported);
  CHECK(check_relation(P("a |-> c"), P("(a, v = b) |-> c")).relation == Relation::Unsupported);
}

TEST_CASE("bound planning and errors") {
  auto neg = *parse("@(negedge clk) a |-> b").unit;
  CHECK_THROWS_AS(check_relation(neg, P("a |-> b")), EquivError);
  try {
    check_relation(neg, P("a |-> b"));
  } catch (const EquivError& e) {
    CHECK(e.code() == EquivError::Code::ClockMismatch);
  }

  auto plan = plan_bounds(P("a ##3 b"), P("a |=> b"), {});
  CHECK(plan.length == 5);
  CHECK(plan.signals == std::vector<std::string>{"a", "b"});

  // 4 signals: span+2 = 6 gives 24 > 22, span+1 = 5 gives 20.
  auto tight = plan_bounds(P("a ##4 b"), P("c |-> d"), {});
  CHECK(tight.length == 5);
  try {
    plan_bounds(P("a ##9 b ##9 c"), P("a"), {});
    FAIL("expected BudgetExceeded");
  } catch (const EquivError& e) {
    CHECK(e.code() == EquivError::Code::BudgetExceeded);
  }
  try {
    plan_bounds(P("a ##3 b"), P("a"), BoundConfig{3, 0, 22});
    FAIL("expected InvalidConfig");
  } catch (const EquivError& e) {
    CHECK(e.code() == EquivError::Code::InvalidConfig);
  }
  auto dis = *parse("@(posedge clk) disable iff (rst) a").unit;
  CHECK(plan_bounds(dis, P("a"), {}).signals == std::vector<std::string>{"a", "rst"});
}

TEST_CASE("parallel and serial kernels agree, witnesses included") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> sigs = {"a", "b"};
  testgen::Limits lim;
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    AssertionUnit g = testgen::random_unit(rng, sigs, testgen::pick(rng, 1, 4), false, lim);
    AssertionUnit r = testgen::random_unit(rng, sigs, testgen::pick(rng, 1, 4), false, lim);
    BoundConfig cfg{0, 0, 14};
    RelationResult fast, slow;
    try {
      fast = check_relation(g, r, cfg);
    } catch (const EquivError&) {
      continue;
    }
    slow = check_relation_serial(g, r, cfg);
    INFO(normalize(g) << "  vs  " << normalize(r));
    CHECK(fast.relation == slow.relation);
    CHECK(result_to_json(fast) == result_to_json(slow));
    ++compared;
  }
  CHECK(compared > 200);
}

TEST_CASE("relation properties") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> sigs = {"a", "b", "c"};
  BoundConfig cfg{0, 0, 15};
  for (int i = 0; i < 150; ++i) {
    AssertionUnit p = testgen::random_unit(rng, sigs, testgen::pick(rng, 1, 4), false);
    AssertionUnit q = testgen::random_unit(rng, sigs, testgen::pick(rng, 1, 4), false);
    Relation pp{}, pq{}, qp{};
    try {
      pp = check_relation(p, p, cfg).relation;
      pq = check_relation(p, q, cfg).relation;
      qp = check_relation(q, p, cfg).relation;
    } catch (const EquivError&) {
      continue;
    }
    INFO(normalize(p) << "  vs  " << normalize(q));
    CHECK(pp == Relation::Equivalent);
    if (pq == Relation::Tightening) CHECK(qp == Relation::Widening);
    if (pq == Relation::Widening) CHECK(qp == Relation::Tightening);
    if (pq == Relation::Equivalent || pq == Relation::NoRelationship) CHECK(qp == pq);
  }
  // s |-> (b && c) never widens s |-> b
  for (int i = 0; i < 100; ++i) {
    AstNode s = testgen::random_sequence(rng, {"a", "d"}, 3);
    AssertionUnit strong = P("x");
    strong.body = AstNode::binary(Kind::ImplOverlap, s,
                                  AstNode::binary(Kind::And, AstNode::atom("b"), AstNode::atom("c")));
    AssertionUnit weak = strong;
    weak.body.children[1] = AstNode::atom("b");
    Relation rel{};
    try {
      rel = check_relation(strong, weak, BoundConfig{0, 0, 18}).relation;
    } catch (const EquivError&) {
      continue;
    }
    CHECK((rel == Relation::Tightening || rel == Relation::Equivalent));
  }
}

TEST_CASE("json and table rendering") {
  Trace t = make_trace({"a", "bb"}, {"10", "01"});
  CHECK(trace_to_json(t).dump() == R"({"length":2,"signals":{"a":"10","bb":"01"}})");
  CHECK(format_trace_table(t) == "cycle | 0 1\na     | 1 0\nbb    | 0 1\n");
  auto r = check_relation(P("a |=> b"), P("a |-> ##1 b"));
  CHECK(result_to_json(r).dump() == R"({"relation":"Equivalent","L":3,"S":2,"signals":["a","b"]})");
  CHECK(parse_relation("Widening") == Relation::Widening);
  CHECK_FALSE(parse_relation("widening"));
}
