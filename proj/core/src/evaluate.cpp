#include "svrkit/evaluate.hpp"

#include <algorithm>
#include <cctype>

#include "svrkit/compose.hpp"
#include "svrkit/error.hpp"

namespace svr {

namespace {

bool word_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

/// Lower-cases ASCII and folds the UTF-8 en dash to '-' so the hyphen and en
/// dash spellings of age bins match each other.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x93) {
      out.push_back('-');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  return out;
}

struct Match {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t class_index = 0;
};

void find_whole_word(const std::string& haystack, const std::string& needle,
                     std::size_t class_index, std::vector<Match>& out) {
  if (needle.empty()) return;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    const std::size_t end = pos + needle.size();
    const bool left_ok = pos == 0 || !word_char(haystack[pos - 1]);
    const bool right_ok = end == haystack.size() || !word_char(haystack[end]);
    if (left_ok && right_ok) out.push_back({pos, end, class_index});
    ++pos;
  }
}

const Taxonomy kGenderTaxonomy{"gender", {{"male", {}}, {"female", {}}}};

Taxonomy make_age_taxonomy() {
  Taxonomy t{"age", {}};
  for (int i = 0; i < kAgeBinCount; ++i) {
    t.classes.push_back({std::string(to_string(static_cast<AgeBin>(i))), {}});
  }
  return t;
}

template <typename Enum>
Taxonomy make_enum_taxonomy(std::string name, int count) {
  Taxonomy t{std::move(name), {}};
  for (int i = 0; i < count; ++i) {
    t.classes.push_back({std::string(to_string(static_cast<Enum>(i))), {}});
  }
  return t;
}

const Taxonomy kVerdictTaxonomy{"verdict", {{"same", {}}, {"different", {}}}};
const Taxonomy kComparisonTaxonomy{
    "comparison",
    {{"speech1", {"speech 1"}}, {"speech2", {"speech 2"}}, {"similar", {}}}};

constexpr std::string_view kEnvHeader = "ENVIRONMENT_STATUS:";
constexpr std::string_view kProfileHeader = "PROFILE_COMPATIBILITY:";
constexpr std::string_view kDecisionHeader = "DECISION:";

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

/// Inverts "The {first|second} recording contains {noise} noise and {reverb}
/// reverberation." for one recording; the clean class is spelled
/// "no background" there.
std::optional<std::pair<NoiseClass, ReverbClass>> parse_env_sentence(
    std::string_view body, std::string_view prefix) {
  const auto start = body.find(prefix);
  if (start == std::string_view::npos) return std::nullopt;
  std::string_view rest = body.substr(start + prefix.size());
  const auto noise_end = rest.find(" noise and ");
  if (noise_end == std::string_view::npos) return std::nullopt;
  const std::string_view noise_word = rest.substr(0, noise_end);
  rest = rest.substr(noise_end + std::string_view(" noise and ").size());
  const auto reverb_end = rest.find(" reverberation.");
  if (reverb_end == std::string_view::npos) return std::nullopt;
  const std::string_view reverb_word = rest.substr(0, reverb_end);

  std::optional<NoiseClass> noise;
  if (noise_word == "no background") {
    noise = NoiseClass::clean;
  } else {
    noise = parse_noise_class(noise_word);
  }
  const auto reverb = parse_reverb_class(reverb_word);
  if (!noise || !reverb) return std::nullopt;
  return std::make_pair(*noise, *reverb);
}

/// Finds the unique clause state for one attribute via the fixed clause
/// inventory; zero or several distinct matches leave the state absent.
std::optional<CompatState> parse_clause(std::string_view body, Attribute attr) {
  std::optional<CompatState> found;
  int distinct = 0;
  for (const CompatState state :
       {CompatState::compatible, CompatState::partial, CompatState::conflicting}) {
    if (attr != Attribute::age && attr != Attribute::pitch &&
        attr != Attribute::brightness && state == CompatState::partial) {
      continue;  // binary attributes have no partial clause
    }
    const std::string clause = render_compat_clause(attr, state);
    if (body.find(clause) != std::string_view::npos) {
      ++distinct;
      found = state;
    }
  }
  if (distinct != 1) return std::nullopt;
  return found;
}

}  // namespace

const Taxonomy& taxonomy(TaxonomyKind kind) {
  static const Taxonomy age = make_age_taxonomy();
  static const Taxonomy region = make_enum_taxonomy<RegionClass>("region", kRegionClassCount);
  static const Taxonomy pitch = make_enum_taxonomy<PitchClass>("pitch", 5);
  static const Taxonomy brightness = make_enum_taxonomy<BrightnessClass>("brightness", 5);
  static const Taxonomy noise = make_enum_taxonomy<NoiseClass>("noise", 5);
  static const Taxonomy reverb = make_enum_taxonomy<ReverbClass>("reverb", 5);
  switch (kind) {
    case TaxonomyKind::gender: return kGenderTaxonomy;
    case TaxonomyKind::age: return age;
    case TaxonomyKind::region: return region;
    case TaxonomyKind::pitch: return pitch;
    case TaxonomyKind::brightness: return brightness;
    case TaxonomyKind::noise: return noise;
    case TaxonomyKind::reverb: return reverb;
    case TaxonomyKind::verdict: return kVerdictTaxonomy;
    case TaxonomyKind::comparison: return kComparisonTaxonomy;
  }
  return kVerdictTaxonomy;
}

ParseOutcome parse_closed_answer(std::string_view text, const Taxonomy& taxonomy) {
  const std::string haystack = normalize(text);

  std::vector<Match> matches;
  for (std::size_t ci = 0; ci < taxonomy.classes.size(); ++ci) {
    const auto& cls = taxonomy.classes[ci];
    find_whole_word(haystack, normalize(cls.canonical), ci, matches);
    for (const auto& alias : cls.aliases) {
      find_whole_word(haystack, normalize(alias), ci, matches);
    }
  }

  // A match fully inside a longer match of another class is shadowed by it.
  std::vector<bool> keep(matches.size(), true);
  for (std::size_t i = 0; i < matches.size(); ++i) {
    for (std::size_t j = 0; j < matches.size(); ++j) {
      if (i == j || matches[j].class_index == matches[i].class_index) continue;
      const bool inside = matches[i].begin >= matches[j].begin &&
                          matches[i].end <= matches[j].end;
      const bool shorter =
          matches[i].end - matches[i].begin < matches[j].end - matches[j].begin;
      if (inside && shorter) {
        keep[i] = false;
        break;
      }
    }
  }

  ParseOutcome out;
  std::optional<std::size_t> the_class;
  std::optional<Match> first_match;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (!keep[i]) continue;
    if (the_class && *the_class != matches[i].class_index) {
      return out;  // ambiguous: two distinct classes
    }
    the_class = matches[i].class_index;
    if (!first_match || matches[i].begin < first_match->begin) {
      first_match = matches[i];
    }
  }
  if (!the_class) return out;

  out.failed = false;
  out.label = taxonomy.classes[*the_class].canonical;
  out.matched_span =
      haystack.substr(first_match->begin, first_match->end - first_match->begin);
  return out;
}

ParseOutcome parse_verdict(std::string_view text) {
  return parse_closed_answer(text, kVerdictTaxonomy);
}

std::string_view to_string(Connector c) noexcept {
  switch (c) {
    case Connector::likewise: return "likewise";
    case Connector::however: return "however";
    case Connector::none: return "none";
  }
  return "";
}

ParsedTrace parse_svr_trace(std::string_view text) {
  ParsedTrace out;

  const auto env_pos = text.find(kEnvHeader);
  const auto profile_pos = text.find(kProfileHeader);
  const auto decision_pos = text.find(kDecisionHeader);
  if (env_pos == std::string_view::npos || profile_pos == std::string_view::npos ||
      decision_pos == std::string_view::npos) {
    return out;
  }
  if (!(env_pos < profile_pos && profile_pos < decision_pos)) {
    return out;
  }

  const std::string_view env_body = trim_view(
      text.substr(env_pos + kEnvHeader.size(), profile_pos - env_pos - kEnvHeader.size()));
  const std::string_view profile_body = trim_view(text.substr(
      profile_pos + kProfileHeader.size(), decision_pos - profile_pos - kProfileHeader.size()));
  const std::string_view decision_body =
      trim_view(text.substr(decision_pos + kDecisionHeader.size()));
  if (env_body.empty() || profile_body.empty() || decision_body.empty()) {
    return out;
  }
  out.format_valid = true;

  out.env1 = parse_env_sentence(env_body, "The first recording contains ");
  out.env2 = parse_env_sentence(env_body, "The second recording contains ");

  for (const auto attr : kAllAttributes) {
    out.clauses.get(attr) = parse_clause(profile_body, attr);
  }
  out.derived_support = score_states(out.clauses).level;

  // Connector: the first "However,"/"Likewise," token in the decision block;
  // absence is the no-connector case.
  const auto however = decision_body.find("However,");
  const auto likewise = decision_body.find("Likewise,");
  if (however != std::string_view::npos &&
      (likewise == std::string_view::npos || however < likewise)) {
    out.connector = Connector::however;
  } else if (likewise != std::string_view::npos) {
    out.connector = Connector::likewise;
  } else {
    out.connector = Connector::none;
  }

  const ParseOutcome verdict = parse_verdict(decision_body);
  if (!verdict.failed) {
    out.verdict = *verdict.label == "same" ? Verdict::same : Verdict::different;
  }
  return out;
}

double attribute_grounding(const ParsedTrace& parsed, const SupportAssessment& reference) {
  if (!parsed.format_valid) return 0.0;
  std::size_t comparable = 0;
  std::size_t matched = 0;
  for (const auto attr : kAllAttributes) {
    const auto& ref_state = reference.states.get(attr);
    if (!ref_state) continue;
    ++comparable;
    const auto& got = parsed.clauses.get(attr);
    if (got && *got == *ref_state) ++matched;
  }
  if (comparable == 0) return 1.0;
  return static_cast<double>(matched) / static_cast<double>(comparable);
}

bool support_grounding(const ParsedTrace& parsed, const SupportAssessment& reference) {
  return parsed.derived_support.has_value() &&
         *parsed.derived_support == reference.level;
}

DiagnosticsReport subset_diagnostics(std::span<const ScoredTrial> trials) {
  if (trials.empty()) {
    throw Error(ErrorCode::empty_input, "no trials to diagnose");
  }
  DiagnosticsReport r;
  r.total = trials.size();
  for (const auto& t : trials) {
    const bool correct = t.predicted && *t.predicted == t.gt_label;
    const auto tally = [&](CellStats& cell) {
      ++cell.count;
      if (correct) ++cell.correct;
    };
    tally(r.overall);
    tally(t.gt_label == Verdict::different ? r.gt_different : r.gt_same);

    switch (classify_case(t.support_level, t.gt_label)) {
      case CaseKind::aligned: tally(r.aligned); break;
      case CaseKind::mixed: tally(r.mixed); break;
      case CaseKind::reversal: tally(r.reversal); break;
    }
    if (t.support_level == SupportLevel::supportive && t.gt_label == Verdict::different) {
      tally(r.supportive_to_different);
    }
    if (t.support_level == SupportLevel::conflicting && t.gt_label == Verdict::same) {
      tally(r.conflicting_to_same);
    }
    ++r.cell_counts[static_cast<std::size_t>(t.support_level)]
                   [static_cast<std::size_t>(t.gt_label == Verdict::same ? 0 : 1)];
  }
  return r;
}

double accuracy(std::span<const std::optional<Verdict>> predictions,
                std::span<const Verdict> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::configuration, "prediction/label count mismatch");
  }
  if (labels.empty()) {
    throw Error(ErrorCode::empty_input, "no labels to score");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] && *predictions[i] == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double accuracy(std::span<const ParseOutcome> predictions,
                std::span<const std::string> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::configuration, "prediction/label count mismatch");
  }
  if (labels.empty()) {
    throw Error(ErrorCode::empty_input, "no labels to score");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!predictions[i].failed && predictions[i].label == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace svr
