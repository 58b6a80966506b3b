#include <doctest.h>

#include <string>
#include <vector>

#include "golden.hpp"
#include "svrkit/compose.hpp"
#include "svrkit/error.hpp"
#include "svrkit/evaluate.hpp"
#include "svrkit/rng.hpp"

using namespace svr;

TEST_CASE("closed-answer parsing finds a unique whole-word class") {
  const auto& gender = taxonomy(TaxonomyKind::gender);
  auto out = parse_closed_answer("The speaker's gender is inferred to be male.", gender);
  REQUIRE(!out.failed);
  CHECK(*out.label == "male");

  out = parse_closed_answer("I am not sure.", gender);
  CHECK(out.failed);

  // "female" must not register a "male" match inside it.
  out = parse_closed_answer("The speaker is female.", gender);
  REQUIRE(!out.failed);
  CHECK(*out.label == "female");
}

TEST_CASE("ambiguity fails the parse") {
  const auto& pitch = taxonomy(TaxonomyKind::pitch);
  auto out = parse_closed_answer("maybe low or high pitch", pitch);
  CHECK(out.failed);

  // A longer class shadows the contained shorter one.
  out = parse_closed_answer("the pitch is very low today", pitch);
  REQUIRE(!out.failed);
  CHECK(*out.label == "very low");

  out = parse_closed_answer("Pitch could be low, or very low.", pitch);
  CHECK(out.failed);  // two distinct classes survive
}

TEST_CASE("brightness words do not collide") {
  const auto& bright = taxonomy(TaxonomyKind::brightness);
  auto out = parse_closed_answer("Timbral brightness seems bright to me.", bright);
  REQUIRE(!out.failed);
  CHECK(*out.label == "bright");
  out = parse_closed_answer("a brilliant, shiny voice", bright);
  REQUIRE(!out.failed);
  CHECK(*out.label == "brilliant");
}

TEST_CASE("age answers parse in either dash spelling") {
  const auto& age = taxonomy(TaxonomyKind::age);
  auto out = parse_closed_answer("The speaker's age is in the 26–35 range.", age);
  REQUIRE(!out.failed);
  CHECK(*out.label == "26–35");
  out = parse_closed_answer("probably 26-35 years old", age);
  REQUIRE(!out.failed);
  CHECK(*out.label == "26–35");
}

TEST_CASE("verdict parsing") {
  auto out = parse_verdict("These recordings are from different speakers.");
  REQUIRE(!out.failed);
  CHECK(*out.label == "different");

  out = parse_verdict("same");
  REQUIRE(!out.failed);
  CHECK(*out.label == "same");

  CHECK(parse_verdict("").failed);
  CHECK(parse_verdict("same or different, hard to say").failed);
}

TEST_CASE("parser determinism") {
  const std::string text = "Pitch is very low. I think the speaker is male.";
  const auto& pitch = taxonomy(TaxonomyKind::pitch);
  const auto a = parse_closed_answer(text, pitch);
  const auto b = parse_closed_answer(text, pitch);
  CHECK(a.failed == b.failed);
  CHECK(a.label == b.label);
  CHECK(a.matched_span == b.matched_span);
}

TEST_CASE("golden traces parse back to their construction") {
  const ParsedTrace t2 = parse_svr_trace(golden::kExample2);
  CHECK(t2.format_valid);
  REQUIRE(t2.env1);
  CHECK(t2.env1->first == NoiseClass::moderate);
  CHECK(t2.env1->second == ReverbClass::slight);
  REQUIRE(t2.env2);
  CHECK(t2.env2->first == NoiseClass::mild);
  CHECK(t2.env2->second == ReverbClass::moderate);
  CHECK(t2.clauses.gender == CompatState::compatible);
  CHECK(t2.clauses.age == CompatState::compatible);
  CHECK(t2.clauses.region == CompatState::compatible);
  CHECK(t2.clauses.pitch == CompatState::partial);
  CHECK(t2.clauses.brightness == CompatState::compatible);
  CHECK(t2.connector == Connector::however);
  CHECK(t2.verdict == Verdict::different);
  CHECK(t2.derived_support == SupportLevel::supportive);

  const ParsedTrace t1 = parse_svr_trace(golden::kExample1);
  CHECK(t1.derived_support == SupportLevel::supportive);
  CHECK(t1.connector == Connector::likewise);
  CHECK(t1.verdict == Verdict::same);
  REQUIRE(t1.env1);
  CHECK(t1.env1->first == NoiseClass::clean);

  const ParsedTrace t3 = parse_svr_trace(golden::kExample3);
  CHECK(t3.derived_support == SupportLevel::conflicting);
  CHECK(t3.connector == Connector::likewise);
  CHECK(t3.verdict == Verdict::different);
}

TEST_CASE("headers out of order invalidate the format") {
  std::string text = golden::kExample1;
  const auto pos = text.find("DECISION:");
  text = "DECISION:\nnothing yet\n\n" + text.substr(0, pos) + "\n";
  const ParsedTrace t = parse_svr_trace(text);
  CHECK(!t.format_valid);
  CHECK(!t.verdict);
  CHECK(!t.derived_support);
  CHECK(t.clauses.comparable_count() == 0);
}

TEST_CASE("truncation invalidates the format") {
  const std::string text = golden::kExample1;
  const ParsedTrace t =
      parse_svr_trace(text.substr(0, text.find("PROFILE_COMPATIBILITY:") + 5));
  CHECK(!t.format_valid);
  CHECK(parse_svr_trace("").format_valid == false);
  // Present headers but an empty body also fail.
  CHECK(!parse_svr_trace("ENVIRONMENT_STATUS:\n\nPROFILE_COMPATIBILITY:\nx\n\nDECISION:\ny\n")
           .format_valid);
}

TEST_CASE("mixed-same traces have no connector") {
  auto trial = golden::example1_trial();
  trial.profile2.age = AgeBin::y36_45;      // +1
  trial.profile2.pitch = PitchClass::high;  // +1 -> total 2, mixed
  trial.gt_label = Verdict::same;
  const auto target = render_svr_target(trial);
  const ParsedTrace t = parse_svr_trace(target.text());
  CHECK(t.derived_support == SupportLevel::mixed);
  CHECK(t.connector == Connector::none);
  CHECK(t.verdict == Verdict::same);
}

TEST_CASE("attribute grounding fractions") {
  const auto trial = golden::example2_trial();
  const auto reference = compute_support(trial.profile1, trial.profile2);
  const auto target = render_svr_target(trial);

  ParsedTrace parsed = parse_svr_trace(target.text());
  CHECK(attribute_grounding(parsed, reference) == 1.0);
  CHECK(support_grounding(parsed, reference));

  // Flip one clause of five.
  std::string flipped = target.text();
  const auto pos = flipped.find("Gender is similar.");
  REQUIRE(pos != std::string::npos);
  flipped.replace(pos, std::string("Gender is similar.").size(), "Gender is different.");
  parsed = parse_svr_trace(flipped);
  CHECK(attribute_grounding(parsed, reference) == doctest::Approx(0.8));
  // A +4 gender flip crosses the support threshold.
  CHECK(parsed.derived_support == SupportLevel::conflicting);
  CHECK(!support_grounding(parsed, reference));

  ParsedTrace invalid;
  CHECK(attribute_grounding(invalid, reference) == 0.0);
  CHECK(!support_grounding(invalid, reference));
}

TEST_CASE("subset diagnostics partition and accuracies") {
  std::vector<ScoredTrial> trials;
  // Four aligned-supportive correct, two reversal (supp->diff) wrong,
  // one mixed correct, one conflicting->same correct.
  for (int i = 0; i < 4; ++i) {
    trials.push_back({Verdict::same, SupportLevel::supportive, Verdict::same});
  }
  for (int i = 0; i < 2; ++i) {
    trials.push_back({Verdict::different, SupportLevel::supportive, Verdict::same});
  }
  trials.push_back({Verdict::same, SupportLevel::mixed, Verdict::same});
  trials.push_back({Verdict::same, SupportLevel::conflicting, Verdict::same});

  const auto report = subset_diagnostics(trials);
  CHECK(report.total == 8);
  CHECK(report.overall.count == 8);
  CHECK(report.overall.correct == 6);
  CHECK(report.gt_same.count == 6);
  CHECK(report.gt_different.count == 2);
  CHECK(report.aligned.count == 4);
  CHECK(report.mixed.count == 1);
  CHECK(report.reversal.count == 3);
  CHECK(report.supportive_to_different.count == 2);
  CHECK(report.supportive_to_different.correct == 0);
  CHECK(report.conflicting_to_same.count == 1);
  CHECK(report.conflicting_to_same.correct == 1);

  std::size_t cells = 0;
  for (const auto& row : report.cell_counts)
    for (const auto c : row) cells += c;
  CHECK(cells == report.total);
  CHECK(report.aligned.count + report.mixed.count + report.reversal.count ==
        report.total);

  CHECK_THROWS_AS(subset_diagnostics(std::vector<ScoredTrial>{}), Error);
}

TEST_CASE("majority-class support predictions score the majority fraction") {
  // 529 of 1000 references are supportive. A trace whose derived support is
  // always the majority class grounds on exactly that fraction of the set.
  const ParsedTrace majority = parse_svr_trace(golden::kExample1);
  REQUIRE(majority.derived_support == SupportLevel::supportive);

  const auto reference_with_level = [](SupportLevel level) {
    AttributeStates st;
    st.gender = CompatState::compatible;
    st.age = CompatState::compatible;
    st.region = CompatState::compatible;
    st.pitch = CompatState::compatible;
    st.brightness = CompatState::compatible;
    if (level == SupportLevel::mixed) {
      st.age = CompatState::conflicting;  // total 2
    } else if (level == SupportLevel::conflicting) {
      st.gender = CompatState::conflicting;  // total 4
    }
    const auto ref = score_states(st);
    REQUIRE(ref.level == level);
    return ref;
  };

  std::vector<SupportLevel> levels;
  for (int i = 0; i < 529; ++i) levels.push_back(SupportLevel::supportive);
  for (int i = 0; i < 300; ++i) levels.push_back(SupportLevel::mixed);
  for (int i = 0; i < 171; ++i) levels.push_back(SupportLevel::conflicting);

  std::size_t grounded = 0;
  for (const auto level : levels) {
    if (support_grounding(majority, reference_with_level(level))) ++grounded;
  }
  CHECK(grounded / 1000.0 == doctest::Approx(0.529));
}

TEST_CASE("accuracy counts failures as incorrect") {
  std::vector<std::optional<Verdict>> preds = {Verdict::same, Verdict::different,
                                               std::nullopt, Verdict::same};
  std::vector<Verdict> labels = {Verdict::same, Verdict::different, Verdict::same,
                                 Verdict::same};
  CHECK(accuracy(preds, labels) == doctest::Approx(0.75));

  preds = {std::nullopt, std::nullopt};
  labels = {Verdict::same, Verdict::different};
  CHECK(accuracy(preds, labels) == 0.0);

  preds = {Verdict::same};
  labels = {Verdict::same};
  CHECK(accuracy(preds, labels) == 1.0);
}

TEST_CASE("round trip over fuzzed full-profile trials") {
  Rng rng(20240);
  for (int i = 0; i < 500; ++i) {
    TrialRecord trial;
    trial.trial_id = "fuzz";
    trial.utt1 = "a";
    trial.utt2 = "b";
    trial.gt_label = rng.bernoulli(0.5) ? Verdict::same : Verdict::different;
    const auto random_profile = [&](const std::string& id) {
      SpeakerProfile p;
      p.utterance_id = id;
      p.gender = static_cast<GenderLabel>(rng.uniform_index(2));
      p.age = static_cast<AgeBin>(rng.uniform_index(10));
      p.region = static_cast<RegionClass>(rng.uniform_index(8));
      p.pitch = static_cast<PitchClass>(rng.uniform_index(5));
      p.brightness = static_cast<BrightnessClass>(rng.uniform_index(5));
      return p;
    };
    trial.profile1 = random_profile("a");
    trial.profile2 = random_profile("b");
    trial.env1.noise = static_cast<NoiseClass>(rng.uniform_index(5));
    trial.env1.reverb = static_cast<ReverbClass>(rng.uniform_index(5));
    trial.env2.noise = static_cast<NoiseClass>(rng.uniform_index(5));
    trial.env2.reverb = static_cast<ReverbClass>(rng.uniform_index(5));

    const auto reference = compute_support(trial.profile1, trial.profile2);
    const auto target = render_svr_target(trial);
    const ParsedTrace parsed = parse_svr_trace(target.text());

    REQUIRE(parsed.format_valid);
    REQUIRE(parsed.env1);
    REQUIRE(parsed.env2);
    CHECK(parsed.env1->first == trial.env1.noise);
    CHECK(parsed.env1->second == trial.env1.reverb);
    CHECK(parsed.env2->first == trial.env2.noise);
    CHECK(parsed.env2->second == trial.env2.reverb);
    for (const auto attr : kAllAttributes) {
      REQUIRE(parsed.clauses.get(attr) == reference.states.get(attr));
    }
    REQUIRE(parsed.derived_support == reference.level);
    REQUIRE(parsed.verdict == trial.gt_label);
    CHECK(attribute_grounding(parsed, reference) == 1.0);
    CHECK(support_grounding(parsed, reference));
  }
}
