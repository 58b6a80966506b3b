#include "svrkit/profile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "svrkit/error.hpp"

namespace svr {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

struct RawRow {
  std::string utterance_id;
  std::string gender;
  std::string age_years;
  std::string nationality;
};

/// Converts one raw manifest row into a profile. Field conversion failures
/// throw; the caller turns them into counted row-level errors.
SpeakerProfile row_to_profile(const RawRow& row, const RegionMapper& regions) {
  if (row.utterance_id.empty()) {
    throw Error(ErrorCode::parse, "missing utterance_id");
  }
  SpeakerProfile p;
  p.utterance_id = row.utterance_id;
  if (!row.gender.empty()) {
    const auto g = parse_gender(lower(row.gender));
    if (!g) {
      throw Error(ErrorCode::parse, "unknown gender '" + row.gender + "'");
    }
    p.gender = g;
  }
  if (!row.age_years.empty()) {
    int years = 0;
    try {
      std::size_t used = 0;
      years = std::stoi(row.age_years, &used);
      if (used != row.age_years.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse, "bad age_years '" + row.age_years + "'");
    }
    p.age = bin_age(years);
  }
  if (!row.nationality.empty()) {
    p.region = regions.map(row.nationality);
  }
  return p;
}

void insert_profile(MetadataLoadResult& result, SpeakerProfile&& p, std::size_t lineno) {
  auto [it, inserted] = result.profiles.emplace(p.utterance_id, std::move(p));
  if (!inserted) {
    throw Error(ErrorCode::duplicate_key, "duplicate utterance_id '" + it->first +
                                              "' at line " + std::to_string(lineno));
  }
  ++result.coverage.loaded;
  const auto& prof = it->second;
  if (prof.gender) ++result.coverage.with_gender;
  if (prof.age) ++result.coverage.with_age;
  if (prof.region) ++result.coverage.with_region;
}

void parse_jsonl(std::istream& in, const RegionMapper& regions,
                 MetadataLoadResult& result) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    ++result.coverage.total_rows;
    try {
      const json rec = json::parse(line);
      RawRow row;
      row.utterance_id = rec.value("utterance_id", "");
      if (rec.contains("gender") && !rec["gender"].is_null())
        row.gender = rec["gender"].get<std::string>();
      if (rec.contains("age_years") && !rec["age_years"].is_null()) {
        const auto& v = rec["age_years"];
        row.age_years = v.is_string() ? v.get<std::string>() : v.dump();
      }
      if (rec.contains("nationality") && !rec["nationality"].is_null())
        row.nationality = rec["nationality"].get<std::string>();
      insert_profile(result, row_to_profile(row, regions), lineno);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::duplicate_key) throw;
      result.row_errors.push_back({lineno, std::string(e.what())});
      ++result.coverage.skipped;
    } catch (const json::exception& e) {
      result.row_errors.push_back({lineno, std::string("bad json: ") + e.what()});
      ++result.coverage.skipped;
    }
  }
}

void parse_delimited(std::istream& in, const std::string& header,
                     const RegionMapper& regions, MetadataLoadResult& result) {
  const char delim = header.find('\t') != std::string::npos ? '\t' : ',';
  const auto names = split(header, delim);
  int col_id = -1, col_gender = -1, col_age = -1, col_nat = -1;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string name = lower(trim(names[i]));
    if (name == "utterance_id") col_id = static_cast<int>(i);
    else if (name == "gender") col_gender = static_cast<int>(i);
    else if (name == "age_years") col_age = static_cast<int>(i);
    else if (name == "nationality") col_nat = static_cast<int>(i);
  }
  if (col_id < 0) {
    throw Error(ErrorCode::parse, "metadata header has no utterance_id column");
  }

  std::string line;
  std::size_t lineno = 1;  // header consumed
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    ++result.coverage.total_rows;
    const auto cells = split(line, delim);
    const auto cell = [&](int col) -> std::string {
      if (col < 0 || static_cast<std::size_t>(col) >= cells.size()) return "";
      return trim(cells[col]);
    };
    RawRow row{cell(col_id), cell(col_gender), cell(col_age), cell(col_nat)};
    try {
      insert_profile(result, row_to_profile(row, regions), lineno);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::duplicate_key) throw;
      result.row_errors.push_back({lineno, std::string(e.what())});
      ++result.coverage.skipped;
    }
  }
}

}  // namespace

AgeBin bin_age(int age_years) {
  if (age_years < 1) {
    throw Error(ErrorCode::invalid_age,
                "age must be >= 1, got " + std::to_string(age_years));
  }
  for (int i = 0; i < kAgeBinCount; ++i) {
    const auto b = age_bin_bounds(static_cast<AgeBin>(i));
    if (age_years >= b.lower && (!b.upper || age_years <= *b.upper)) {
      return static_cast<AgeBin>(i);
    }
  }
  // Unreachable: the last bin is open-ended.
  throw Error(ErrorCode::invalid_age, "age out of range");
}

MetadataLoadResult parse_speaker_metadata(std::istream& in, const RegionMapper& regions) {
  MetadataLoadResult result;
  std::string first_line;
  if (!std::getline(in, first_line)) {
    return result;
  }
  const std::string head = trim(first_line);
  if (!head.empty() && head.front() == '{') {
    std::stringstream rest;
    rest << first_line << "\n" << in.rdbuf();
    parse_jsonl(rest, regions, result);
  } else {
    parse_delimited(in, first_line, regions, result);
  }
  return result;
}

MetadataLoadResult load_speaker_metadata(const std::filesystem::path& path,
                                         const RegionMapper& regions) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open metadata manifest: " + path.string());
  }
  return parse_speaker_metadata(in, regions);
}

}  // namespace svr
