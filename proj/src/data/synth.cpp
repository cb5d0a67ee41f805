#include <algorithm>
#include <functional>
#include <random>
#include <unordered_set>

#include "svagen/dataset.hpp"
#include "svagen/equiv.hpp"
#include "svagen/parser.hpp"
#include "svagen/printer.hpp"

namespace svagen {

namespace {

constexpr int kMaxAttemptsPerRecord = 20000;

// Builds trees of an exact depth from the enabled families. Each layer
// (boolean, sequence, property) only offers node kinds that can still reach the
// requested depth, so generation never needs to backtrack.
class TreeGen {
 public:
  TreeGen(const SynthSpec& spec, std::mt19937_64& rng) : spec_(spec), rng_(rng) {}

  bool has(const char* family) const { return spec_.families.count(family) > 0; }

  bool bool_ok(int d) const { return d == 1 || has("bool_ops"); }
  bool seq_ok(int d) const {
    if (d == 1 || bool_ok(d)) return true;
    if (has("delay") || has("rep_consec") || has("within")) return true;
    return (has("rep_goto") || has("rep_nonconsec")) && bool_ok(d - 1);
  }
  bool prop_ok(int d) const {
    return seq_ok(d) || has("impl_ov") || has("impl_nov") || has("prop_logic") || has("until");
  }

  AstNode prop(int d) {
    if (d == 1) return leaf();
    std::vector<std::function<AstNode()>> options;
    if (seq_ok(d)) options.push_back([&] { return seq(d); });
    for (Kind k : {Kind::ImplOverlap, Kind::ImplNonOverlap}) {
      if (!has(k == Kind::ImplOverlap ? "impl_ov" : "impl_nov")) continue;
      options.push_back([&, k] {
        auto [l, r] = split_depths(d, [&](int x) { return seq_ok(x); }, [&](int x) { return prop_ok(x); });
        return AstNode::binary(k, seq(l), prop(r));
      });
    }
    if (has("prop_logic")) {
      options.push_back([&] { return AstNode::unary(Kind::PropNot, prop(d - 1)); });
      for (Kind k : {Kind::PropAnd, Kind::PropOr}) options.push_back([&, k] { return prop_pair(k, d); });
    }
    if (has("until")) options.push_back([&] { return prop_pair(Kind::Until, d); });
    return options[below(options.size())]();
  }

  AstNode seq(int d) {
    if (d == 1) return leaf();
    std::vector<std::function<AstNode()>> options;
    if (bool_ok(d)) options.push_back([&] { return boolean(d); });
    if (has("delay")) {
      options.push_back([&] {
        AstNode n = seq_pair(Kind::Delay, d);
        n.lower = n.upper = pick(0, spec_.max_delay);
        return n;
      });
      options.push_back([&] {
        AstNode n = AstNode::unary(Kind::Delay, seq(d - 1));
        n.lower = n.upper = pick(1, std::max(1, spec_.max_delay));
        return n;
      });
      if (spec_.max_delay >= 1) {
        options.push_back([&] {
          AstNode n = seq_pair(Kind::DelayRange, d);
          n.lower = pick(0, spec_.max_delay - 1);
          n.upper = pick(n.lower + 1, spec_.max_delay);
          return n;
        });
      }
    }
    if (has("rep_consec")) {
      options.push_back([&] {
        AstNode n = AstNode::unary(Kind::RepeatConsec, seq(d - 1));
        n.lower = n.upper = pick(1, spec_.max_repeat);
        return n;
      });
      if (spec_.max_repeat >= 2) {
        options.push_back([&] {
          AstNode n = AstNode::unary(Kind::RepeatRange, seq(d - 1));
          n.lower = pick(1, spec_.max_repeat - 1);
          n.upper = pick(n.lower + 1, spec_.max_repeat);
          return n;
        });
      }
    }
    if (bool_ok(d - 1)) {
      for (Kind k : {Kind::RepeatGoto, Kind::RepeatNonConsec}) {
        if (!has(k == Kind::RepeatGoto ? "rep_goto" : "rep_nonconsec")) continue;
        options.push_back([&, k] {
          AstNode n = AstNode::unary(k, boolean(d - 1));
          n.lower = n.upper = pick(1, spec_.max_repeat);
          return n;
        });
      }
    }
    if (has("within")) options.push_back([&] { return seq_pair(Kind::Within, d); });
    return options[below(options.size())]();
  }

  AstNode boolean(int d) {
    if (d == 1) return leaf();
    switch (below(4)) {
      case 0: return AstNode::unary(Kind::Not, boolean(d - 1));
      case 1: return bool_pair(Kind::And, d);
      case 2: return bool_pair(Kind::Or, d);
      default: {
        AstNode n = bool_pair(Kind::RelOp, d);
        n.name = below(2) ? "==" : "!=";
        return n;
      }
    }
  }

  AstNode leaf() {
    const std::string& s = spec_.signals[below(spec_.signals.size())];
    if (has("sampling") && below(5) == 0) {
      static const char* kFns[] = {"$rose", "$fell", "$stable", "$past"};
      AstNode n;
      n.kind = Kind::SysFunc;
      n.name = kFns[below(4)];
      n.arg = s;
      n.lower = n.upper = n.name == "$past" ? pick(1, 2) : 1;
      return n;
    }
    return AstNode::atom(s);
  }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  int pick(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

 private:
  // One child gets depth d-1, the other a random reachable depth in [1, d-1].
  template <typename OkL, typename OkR>
  std::pair<int, int> split_depths(int d, OkL ok_l, OkR ok_r) {
    std::vector<std::pair<int, int>> choices;
    for (int other = 1; other <= d - 1; ++other) {
      if (ok_l(d - 1) && ok_r(other)) choices.push_back({d - 1, other});
      if (other != d - 1 && ok_l(other) && ok_r(d - 1)) choices.push_back({other, d - 1});
    }
    return choices[below(choices.size())];
  }

  AstNode prop_pair(Kind k, int d) {
    auto ok = [&](int x) { return prop_ok(x); };
    auto [l, r] = split_depths(d, ok, ok);
    return AstNode::binary(k, prop(l), prop(r));
  }
  AstNode seq_pair(Kind k, int d) {
    auto ok = [&](int x) { return seq_ok(x); };
    auto [l, r] = split_depths(d, ok, ok);
    return AstNode::binary(k, seq(l), seq(r));
  }
  AstNode bool_pair(Kind k, int d) {
    auto ok = [&](int x) { return bool_ok(x); };
    auto [l, r] = split_depths(d, ok, ok);
    return AstNode::binary(k, boolean(l), boolean(r));
  }

  const SynthSpec& spec_;
  std::mt19937_64& rng_;
};

// `x or x`, `s within s` and the like read as noise in a corpus.
bool has_twin_operands(const AstNode& root) {
  bool twin = false;
  visit(root, [&](const AstNode& n) {
    twin = twin || (n.children.size() == 2 && n.children[0] == n.children[1]);
  });
  return twin;
}

void validate_spec(const SynthSpec& spec) {
  if (spec.signals.empty()) throw SynthError("synth spec needs at least one signal");
  if (spec.max_delay < 0 || spec.max_repeat < 1) throw SynthError("synth spec bounds out of range");
  if (spec.disable_probability < 0.0 || spec.disable_probability > 1.0) {
    throw SynthError("disable probability must be in [0, 1]");
  }
  for (const auto& f : spec.families) {
    bool known = f == "bool_ops";
    for (auto fam : kCategoryFamilies) known = known || fam == f;
    if (!known) throw SynthError("unknown construct family '" + f + "'");
    if (f == "local_var") throw SynthError("local_var is not available for synthetic records");
  }
  for (const auto& [tier, n] : spec.counts) {
    if (n < 0) throw SynthError("negative count for tier " + std::string(tier_name(tier)));
  }
  for (const auto& [cat, w] : spec.category_weights) {
    if (!(w > 0.0)) throw SynthError("category weight for '" + cat + "' must be positive");
  }
}

}  // namespace

std::vector<DatasetRecord> synth_corpus(const SynthSpec& spec, std::uint64_t seed) {
  validate_spec(spec);
  std::mt19937_64 rng(seed);
  TreeGen gen(spec, rng);
  double max_weight = 1.0;
  for (const auto& [_, w] : spec.category_weights) max_weight = std::max(max_weight, w);

  std::vector<DatasetRecord> out;
  std::unordered_set<std::string> seen;
  for (const auto& [tier, count] : spec.counts) {
    if (count == 0) continue;
    const int target = static_cast<int>(tier);
    if (!gen.prop_ok(target)) {
      throw SynthError("tier " + std::string(tier_name(tier)) +
                       " cannot be reached with the enabled construct families");
    }
    int made = 0;
    int attempts = 0;
    while (made < count) {
      if (++attempts > kMaxAttemptsPerRecord * count) {
        throw SynthError("could not generate " + std::to_string(count) + " distinct " +
                         std::string(tier_name(tier)) + " records within the trace budget (got " +
                         std::to_string(made) + ")");
      }
      // D4 also covers deeper trees; mix in a few depth-5 bodies.
      const int d = tier == Tier::D4 && gen.prop_ok(5) && gen.below(4) == 0 ? 5 : target;
      AssertionUnit unit;
      unit.clock = Clock{Edge::Posedge, spec.clock};
      unit.body = gen.prop(d);
      if (has_twin_operands(unit.body)) continue;
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < spec.disable_probability) unit.disable.push_back(AstNode::atom("rst"));

      const std::string text = normalize(unit);
      if (seen.count(text)) continue;
      ParseResult reparsed = parse(text);
      if (!reparsed.ok() || !reparsed.unit->same_tree(unit) || normalize(*reparsed.unit) != text) {
        throw SynthError("generated tree does not round-trip: " + text);
      }
      AnalysisProfile profile = analyze(*reparsed.unit);
      if (profile.tier != tier) continue;
      if (!spec.category_weights.empty()) {
        auto it = spec.category_weights.find(profile.category);
        const double w = it == spec.category_weights.end() ? 1.0 : it->second;
        const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (v >= w / max_weight) continue;
      }
      try {
        equiv::BoundConfig cfg;
        cfg.cap = spec.max_trace_bits;
        equiv::plan_bounds(*reparsed.unit, *reparsed.unit, cfg);
      } catch (const equiv::EquivError&) {
        continue;
      }
      DatasetRecord rec = make_record(text, SvadText{describe(*reparsed.unit)});
      seen.insert(text);
      out.push_back(std::move(rec));
      ++made;
    }
  }
  return out;
}

}  // namespace svagen
