#include <doctest.h>

#include "svagen/genloop.hpp"
#include "svagen/prompt.hpp"

using namespace svagen;

namespace {

const SvadText kSvad{"On every posedge of `clk`: whenever `a` holds, `b` holds one cycle later."};

std::string fenced(const std::string& s) { return "Here it is:\n```systemverilog\n" + s + "\n```\nDone."; }

}  // namespace

TEST_CASE("prompt rendering") {
  const std::string p = render_prompt(kSvad, std::nullopt);
  CHECK(p.find(kSvad.prose) != std::string::npos);
  CHECK(p.find("fenced code block") != std::string::npos);
  CHECK(p.find("rejected") == std::string::npos);
  CHECK(render_prompt(kSvad, std::nullopt) == p);

  Diagnostic d{1, 18, "expected an expression after '|->'", "|=>"};
  const std::string q = render_prompt(kSvad, Prior{"@(posedge clk) a |-> |=> b", {d}});
  CHECK(q.find(d.message) != std::string::npos);
  CHECK(q.find(format_diagnostic(d)) != std::string::npos);
  CHECK(q.find("@(posedge clk) a |-> |=> b") != std::string::npos);

  CHECK(render_prompt(kSvad, std::nullopt, "S={svad}|F={feedback}") == "S=" + kSvad.prose + "|F=");
  CHECK_THROWS_AS(render_prompt(kSvad, std::nullopt, "only {svad}"), TemplateError);
}

TEST_CASE("candidate extraction") {
  CHECK(extract_candidate(fenced("@(posedge clk) a |=> b")) == "@(posedge clk) a |=> b");
  CHECK(extract_candidate("```\n  x  \n```") == "x");
  CHECK(extract_candidate("```sv\nfirst\n```\n```sv\nsecond\n```") == "first");
  CHECK_FALSE(extract_candidate("@(posedge clk) a |=> b").has_value());
  CHECK_FALSE(extract_candidate("```sv\nunterminated").has_value());
  CHECK(classify_error({missing_fence_diagnostic()}) == ErrorLabel::StructureError);
}

TEST_CASE("valid on the first round") {
  FixedProvider p({fenced("@(posedge clk) a |=> b")});
  auto o = generate_with_repair(kSvad, p);
  CHECK(o.status == GenStatus::Passed);
  CHECK(o.rounds == 1);
  CHECK(o.log.size() == 1);
  CHECK(o.final_text == "@(posedge clk) a |=> b");
  CHECK_FALSE(o.log[0].label.has_value());
}

TEST_CASE("repair after one failure embeds the diagnostics") {
  const std::string bad = "@(posedge clk) a |-> |=> b";
  const std::string first = render_prompt(kSvad, std::nullopt);
  ReplayProvider p(std::map<std::string, std::vector<std::string>>{{prompt_hash(first), {fenced(bad)}}});
  // The second prompt is only known after the first round; use a provider that
  // records prompts instead.
  struct Script : Provider {
    std::vector<std::string> replies, prompts;
    std::string complete(const std::string& q) override {
      prompts.push_back(q);
      return replies.at(prompts.size() - 1);
    }
  } s;
  s.replies = {fenced(bad), fenced("@(posedge clk) a |=> b")};
  auto o = generate_with_repair(kSvad, s, GenOptions{3, {}});
  CHECK(o.status == GenStatus::Passed);
  CHECK(o.rounds == 2);
  REQUIRE(o.log.size() == 2);
  REQUIRE(o.log[0].label.has_value());
  CHECK(*o.log[0].label == ErrorLabel::ImplicationOperatorError);
  for (const auto& d : o.log[0].diagnostics) {
    CHECK(s.prompts[1].find(d.message) != std::string::npos);
  }
  CHECK(s.prompts[1] == render_prompt(kSvad, Prior{bad, o.log[0].diagnostics}));
  CHECK(s.prompts[0] == first);
  CHECK(p.complete(first) == fenced(bad));
}

TEST_CASE("exhaustion and single-pass mode") {
  FixedProvider p({fenced("@(posedge clk) a ##[3:1] b")});
  auto o = generate_with_repair(kSvad, p, GenOptions{3, {}});
  CHECK(o.status == GenStatus::Exhausted);
  CHECK(o.rounds == 3);
  CHECK(p.calls() == 3);
  REQUIRE(o.log.size() == 3);
  for (const auto& r : o.log) CHECK(r.label == ErrorLabel::TimingOperatorError);

  FixedProvider q({"no code here"});
  auto single = generate_with_repair(kSvad, q, GenOptions{1, {}});
  CHECK(single.rounds == 1);
  CHECK(q.calls() == 1);
  CHECK(single.log[0].prompt == render_prompt(kSvad, std::nullopt));
  CHECK(single.log[0].label == ErrorLabel::StructureError);
  CHECK_THROWS(generate_with_repair(kSvad, q, GenOptions{0, {}}));
}

TEST_CASE("provider failure keeps the partial log") {
  struct Flaky : Provider {
    int n = 0;
    std::string complete(const std::string&) override {
      if (n++ == 0) return "```\n@(posedge clk) a |->\n```";
      throw ProviderError("connection refused");
    }
  } f;
  try {
    generate_with_repair(kSvad, f, GenOptions{3, {}});
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    CHECK(e.partial().rounds == 1);
    CHECK(e.partial().log.size() == 1);
    CHECK(std::string(e.what()).find("connection refused") != std::string::npos);
  }
}
