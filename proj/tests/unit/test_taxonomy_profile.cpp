#include <doctest.h>

#include <set>
#include <sstream>

#include "svrkit/error.hpp"
#include "svrkit/profile.hpp"
#include "svrkit/taxonomy.hpp"

using namespace svr;

TEST_CASE("age bins cover the published list") {
  CHECK(to_string(AgeBin::y1_7) == "1–7");
  CHECK(to_string(AgeBin::y26_35) == "26–35");
  CHECK(to_string(AgeBin::y76_plus) == "76+");
  CHECK(index_of(AgeBin::y1_7) == 0);
  CHECK(index_of(AgeBin::y76_plus) == 9);
}

TEST_CASE("bin_age maps published examples") {
  CHECK(bin_age(30) == AgeBin::y26_35);
  CHECK(bin_age(76) == AgeBin::y76_plus);
  CHECK(bin_age(25) == AgeBin::y18_25);
  CHECK(bin_age(1) == AgeBin::y1_7);
  CHECK(bin_age(120) == AgeBin::y76_plus);
  CHECK_THROWS_AS(bin_age(0), Error);
  CHECK_THROWS_AS(bin_age(-3), Error);
}

TEST_CASE("bin_age is total and monotone on 1..120") {
  // Brute-force range scan: every age lands in exactly one bin whose bounds
  // contain it, and the bin index never decreases with age.
  int prev_index = 0;
  for (int age = 1; age <= 120; ++age) {
    const AgeBin bin = bin_age(age);
    const auto bounds = age_bin_bounds(bin);
    CHECK(age >= bounds.lower);
    if (bounds.upper) CHECK(age <= *bounds.upper);

    int containing = 0;
    for (int i = 0; i < kAgeBinCount; ++i) {
      const auto b = age_bin_bounds(static_cast<AgeBin>(i));
      if (age >= b.lower && (!b.upper || age <= *b.upper)) ++containing;
    }
    CHECK(containing == 1);
    CHECK(index_of(bin) >= prev_index);
    prev_index = index_of(bin);
  }
}

TEST_CASE("region mapping matches the class table") {
  const auto& m = RegionMapper::builtin();
  CHECK(m.map("USA") == RegionClass::north_american);
  CHECK(m.map("Ireland") == RegionClass::british_irish);
  CHECK(m.map("Mexico") == RegionClass::latin_hispanic);
  CHECK(m.map("UK") == RegionClass::british_irish);
  CHECK(m.map("Germany") == RegionClass::european);
  CHECK(m.map("Australia") == RegionClass::oceanian);
  CHECK(m.map("Japan") == RegionClass::east_southeast_asian);
  CHECK(m.map("Egypt") == RegionClass::middle_eastern_north_african);
  CHECK(m.map("Nigeria") == RegionClass::african);
}

TEST_CASE("region mapping normalizes case and whitespace but not spelling") {
  const auto& m = RegionMapper::builtin();
  CHECK(m.map("  usa ") == RegionClass::north_american);
  CHECK(m.map("IRELAND") == RegionClass::british_irish);
  CHECK(m.map("Usa") == m.map("USA"));
  CHECK_THROWS_AS(m.map("Atlantis"), Error);
  CHECK(!m.try_map("Atlantis"));
  try {
    m.map("Atlantis");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unmapped_nationality);
    CHECK(std::string(e.what()).find("Atlantis") != std::string::npos);
  }
}

TEST_CASE("shipped region map file agrees with the builtin table") {
  const auto path = std::filesystem::path(SVRKIT_SOURCE_DIR) / "core" / "data" /
                    "nationality_region_map.v1.txt";
  const RegionMapper from_file = RegionMapper::load(path);
  const auto& builtin = RegionMapper::builtin();
  CHECK(from_file.size() == builtin.size());
  for (const char* probe : {"usa", "ireland", "mexico", "india", "fiji", "congo"}) {
    CHECK(from_file.map(probe) == builtin.map(probe));
  }
}

TEST_CASE("metadata loading fills only present fields") {
  std::istringstream in(
      "utterance_id\tgender\tage_years\tnationality\n"
      "a\tmale\t40\tUK\n"
      "b\tfemale\t\t\n");
  const auto result = parse_speaker_metadata(in, RegionMapper::builtin());
  REQUIRE(result.profiles.size() == 2);

  const auto& a = result.profiles.at("a");
  CHECK(a.gender == GenderLabel::male);
  CHECK(a.age == AgeBin::y36_45);
  CHECK(a.region == RegionClass::british_irish);
  CHECK(!a.pitch);

  const auto& b = result.profiles.at("b");
  CHECK(b.gender == GenderLabel::female);
  CHECK(!b.age);
  CHECK(!b.region);

  CHECK(result.coverage.total_rows == 2);
  CHECK(result.coverage.loaded == 2);
  CHECK(result.coverage.with_gender == 2);
  CHECK(result.coverage.with_age == 1);
  CHECK(result.coverage.with_region == 1);
}

TEST_CASE("duplicate utterance ids are a hard error") {
  std::istringstream in(
      "utterance_id,gender\n"
      "a,male\n"
      "a,female\n");
  CHECK_THROWS_AS(parse_speaker_metadata(in, RegionMapper::builtin()), Error);
}

TEST_CASE("malformed rows are skipped and counted with line numbers") {
  std::istringstream in(
      "utterance_id\tgender\tage_years\tnationality\n"
      "a\tmale\t0\t\n"          // invalid age
      "b\tmale\tforty\t\n"      // non-numeric age
      "c\tmale\t\tAtlantis\n"   // unmapped nationality
      "d\tfemale\t33\tFrance\n");
  const auto result = parse_speaker_metadata(in, RegionMapper::builtin());
  CHECK(result.profiles.size() == 1);
  CHECK(result.profiles.count("d") == 1);
  REQUIRE(result.row_errors.size() == 3);
  CHECK(result.row_errors[0].line == 2);
  CHECK(result.row_errors[1].line == 3);
  CHECK(result.row_errors[2].line == 4);
  CHECK(result.coverage.skipped == 3);
}

TEST_CASE("metadata loading accepts line-delimited json") {
  std::istringstream in(
      R"({"utterance_id": "x", "gender": "female", "age_years": 28, "nationality": "France"})"
      "\n"
      R"({"utterance_id": "y", "gender": "male"})"
      "\n");
  const auto result = parse_speaker_metadata(in, RegionMapper::builtin());
  REQUIRE(result.profiles.size() == 2);
  CHECK(result.profiles.at("x").age == AgeBin::y26_35);
  CHECK(result.profiles.at("x").region == RegionClass::european);
  CHECK(!result.profiles.at("y").age);
}

TEST_CASE("output fields never appear without input fields") {
  std::istringstream in(
      "utterance_id,gender,age_years,nationality\n"
      "u1,,,\n"
      "u2,male,,\n"
      "u3,,50,\n");
  const auto result = parse_speaker_metadata(in, RegionMapper::builtin());
  CHECK(!result.profiles.at("u1").gender);
  CHECK(!result.profiles.at("u1").age);
  CHECK(!result.profiles.at("u1").region);
  CHECK(result.profiles.at("u2").gender == GenderLabel::male);
  CHECK(!result.profiles.at("u2").age);
  CHECK(result.profiles.at("u3").age == AgeBin::y46_55);
  CHECK(!result.profiles.at("u3").gender);
}
