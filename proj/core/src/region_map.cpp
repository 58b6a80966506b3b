#include <algorithm>
#include <cctype>
#include <fstream>

#include "svrkit/error.hpp"
#include "svrkit/profile.hpp"

namespace svr {

namespace {

constexpr const char* kBuiltinVersion = "v1";

std::string normalize_key(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  std::string out(s.substr(begin, end - begin));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct BuiltinEntry {
  const char* nationality;
  RegionClass region;
};

// Best-effort reconstruction over VoxCeleb nationalities and common aliases.
// South Asian countries are grouped under East/Southeast Asian as the closest
// available class of the eight.
constexpr BuiltinEntry kBuiltinTable[] = {
    // North American
    {"usa", RegionClass::north_american},
    {"united states", RegionClass::north_american},
    {"united states of america", RegionClass::north_american},
    {"u.s.a.", RegionClass::north_american},
    {"us", RegionClass::north_american},
    {"america", RegionClass::north_american},
    {"american", RegionClass::north_american},
    {"canada", RegionClass::north_american},
    {"canadian", RegionClass::north_american},

    // British/Irish
    {"uk", RegionClass::british_irish},
    {"u.k.", RegionClass::british_irish},
    {"united kingdom", RegionClass::british_irish},
    {"great britain", RegionClass::british_irish},
    {"britain", RegionClass::british_irish},
    {"british", RegionClass::british_irish},
    {"england", RegionClass::british_irish},
    {"scotland", RegionClass::british_irish},
    {"wales", RegionClass::british_irish},
    {"northern ireland", RegionClass::british_irish},
    {"ireland", RegionClass::british_irish},
    {"irish", RegionClass::british_irish},

    // European
    {"germany", RegionClass::european},
    {"france", RegionClass::european},
    {"italy", RegionClass::european},
    {"spain", RegionClass::european},
    {"portugal", RegionClass::european},
    {"netherlands", RegionClass::european},
    {"holland", RegionClass::european},
    {"belgium", RegionClass::european},
    {"luxembourg", RegionClass::european},
    {"austria", RegionClass::european},
    {"switzerland", RegionClass::european},
    {"sweden", RegionClass::european},
    {"norway", RegionClass::european},
    {"denmark", RegionClass::european},
    {"finland", RegionClass::european},
    {"iceland", RegionClass::european},
    {"greece", RegionClass::european},
    {"poland", RegionClass::european},
    {"czech republic", RegionClass::european},
    {"czechia", RegionClass::european},
    {"slovakia", RegionClass::european},
    {"hungary", RegionClass::european},
    {"romania", RegionClass::european},
    {"bulgaria", RegionClass::european},
    {"croatia", RegionClass::european},
    {"serbia", RegionClass::european},
    {"bosnia and herzegovina", RegionClass::european},
    {"slovenia", RegionClass::european},
    {"north macedonia", RegionClass::european},
    {"macedonia", RegionClass::european},
    {"albania", RegionClass::european},
    {"ukraine", RegionClass::european},
    {"russia", RegionClass::european},
    {"belarus", RegionClass::european},
    {"estonia", RegionClass::european},
    {"latvia", RegionClass::european},
    {"lithuania", RegionClass::european},
    {"moldova", RegionClass::european},
    {"malta", RegionClass::european},
    {"cyprus", RegionClass::european},

    // Latin/Hispanic
    {"mexico", RegionClass::latin_hispanic},
    {"brazil", RegionClass::latin_hispanic},
    {"argentina", RegionClass::latin_hispanic},
    {"chile", RegionClass::latin_hispanic},
    {"colombia", RegionClass::latin_hispanic},
    {"venezuela", RegionClass::latin_hispanic},
    {"peru", RegionClass::latin_hispanic},
    {"ecuador", RegionClass::latin_hispanic},
    {"bolivia", RegionClass::latin_hispanic},
    {"paraguay", RegionClass::latin_hispanic},
    {"uruguay", RegionClass::latin_hispanic},
    {"cuba", RegionClass::latin_hispanic},
    {"puerto rico", RegionClass::latin_hispanic},
    {"dominican republic", RegionClass::latin_hispanic},
    {"guatemala", RegionClass::latin_hispanic},
    {"honduras", RegionClass::latin_hispanic},
    {"el salvador", RegionClass::latin_hispanic},
    {"nicaragua", RegionClass::latin_hispanic},
    {"costa rica", RegionClass::latin_hispanic},
    {"panama", RegionClass::latin_hispanic},

    // Oceanian
    {"australia", RegionClass::oceanian},
    {"australian", RegionClass::oceanian},
    {"new zealand", RegionClass::oceanian},
    {"fiji", RegionClass::oceanian},
    {"papua new guinea", RegionClass::oceanian},
    {"samoa", RegionClass::oceanian},

    // East/Southeast Asian (South Asia grouped here; see header note)
    {"china", RegionClass::east_southeast_asian},
    {"japan", RegionClass::east_southeast_asian},
    {"south korea", RegionClass::east_southeast_asian},
    {"korea", RegionClass::east_southeast_asian},
    {"taiwan", RegionClass::east_southeast_asian},
    {"hong kong", RegionClass::east_southeast_asian},
    {"macau", RegionClass::east_southeast_asian},
    {"mongolia", RegionClass::east_southeast_asian},
    {"singapore", RegionClass::east_southeast_asian},
    {"malaysia", RegionClass::east_southeast_asian},
    {"indonesia", RegionClass::east_southeast_asian},
    {"philippines", RegionClass::east_southeast_asian},
    {"thailand", RegionClass::east_southeast_asian},
    {"vietnam", RegionClass::east_southeast_asian},
    {"cambodia", RegionClass::east_southeast_asian},
    {"laos", RegionClass::east_southeast_asian},
    {"myanmar", RegionClass::east_southeast_asian},
    {"brunei", RegionClass::east_southeast_asian},
    {"india", RegionClass::east_southeast_asian},
    {"pakistan", RegionClass::east_southeast_asian},
    {"bangladesh", RegionClass::east_southeast_asian},
    {"sri lanka", RegionClass::east_southeast_asian},
    {"nepal", RegionClass::east_southeast_asian},
    {"bhutan", RegionClass::east_southeast_asian},
    {"maldives", RegionClass::east_southeast_asian},

    // Middle Eastern/North African
    {"iran", RegionClass::middle_eastern_north_african},
    {"iraq", RegionClass::middle_eastern_north_african},
    {"israel", RegionClass::middle_eastern_north_african},
    {"turkey", RegionClass::middle_eastern_north_african},
    {"syria", RegionClass::middle_eastern_north_african},
    {"lebanon", RegionClass::middle_eastern_north_african},
    {"jordan", RegionClass::middle_eastern_north_african},
    {"saudi arabia", RegionClass::middle_eastern_north_african},
    {"united arab emirates", RegionClass::middle_eastern_north_african},
    {"uae", RegionClass::middle_eastern_north_african},
    {"qatar", RegionClass::middle_eastern_north_african},
    {"kuwait", RegionClass::middle_eastern_north_african},
    {"bahrain", RegionClass::middle_eastern_north_african},
    {"oman", RegionClass::middle_eastern_north_african},
    {"yemen", RegionClass::middle_eastern_north_african},
    {"egypt", RegionClass::middle_eastern_north_african},
    {"morocco", RegionClass::middle_eastern_north_african},
    {"algeria", RegionClass::middle_eastern_north_african},
    {"tunisia", RegionClass::middle_eastern_north_african},
    {"libya", RegionClass::middle_eastern_north_african},
    {"palestine", RegionClass::middle_eastern_north_african},
    {"afghanistan", RegionClass::middle_eastern_north_african},

    // African
    {"south africa", RegionClass::african},
    {"nigeria", RegionClass::african},
    {"kenya", RegionClass::african},
    {"ghana", RegionClass::african},
    {"ethiopia", RegionClass::african},
    {"tanzania", RegionClass::african},
    {"uganda", RegionClass::african},
    {"zimbabwe", RegionClass::african},
    {"zambia", RegionClass::african},
    {"senegal", RegionClass::african},
    {"cameroon", RegionClass::african},
    {"ivory coast", RegionClass::african},
    {"somalia", RegionClass::african},
    {"sudan", RegionClass::african},
    {"angola", RegionClass::african},
    {"mozambique", RegionClass::african},
    {"botswana", RegionClass::african},
    {"namibia", RegionClass::african},
    {"rwanda", RegionClass::african},
    {"congo", RegionClass::african},
    {"democratic republic of the congo", RegionClass::african},
};

}  // namespace

const RegionMapper& RegionMapper::builtin() {
  static const RegionMapper instance = [] {
    RegionMapper m;
    m.version_ = kBuiltinVersion;
    for (const auto& e : kBuiltinTable) {
      m.table_.emplace(e.nationality, e.region);
    }
    return m;
  }();
  return instance;
}

RegionMapper RegionMapper::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open region map: " + path.string());
  }
  RegionMapper m;
  m.version_ = path.filename().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (normalize_key(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::parse, "region map line " + std::to_string(lineno) +
                                        " has no tab separator");
    }
    const std::string key = normalize_key(line.substr(0, tab));
    const std::string value = std::string(line.substr(tab + 1));
    std::string trimmed = value;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
      trimmed.erase(trimmed.begin());
    const auto region = parse_region_class(trimmed);
    if (!region) {
      throw Error(ErrorCode::parse, "region map line " + std::to_string(lineno) +
                                        ": unknown class '" + trimmed + "'");
    }
    if (!m.table_.emplace(key, *region).second) {
      throw Error(ErrorCode::duplicate_key,
                  "region map line " + std::to_string(lineno) +
                      ": duplicate nationality '" + key + "'");
    }
  }
  return m;
}

RegionClass RegionMapper::map(std::string_view nationality) const {
  const auto r = try_map(nationality);
  if (!r) {
    throw Error(ErrorCode::unmapped_nationality,
                "unmapped nationality: '" + std::string(nationality) + "'");
  }
  return *r;
}

std::optional<RegionClass> RegionMapper::try_map(std::string_view nationality) const {
  const auto it = table_.find(normalize_key(nationality));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

}  // namespace svr
