// Copyright 2026 The ogsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipeline/synth_corpus.h"

#include <string>

#include "core/error.h"
#include "core/random.h"
#include "core/vocab.h"

namespace ogsum::pipeline {

namespace {

using Words = std::vector<std::string>;

const Words kFirst = {"Anna",  "Boris", "Carla", "David", "Elena", "Felix", "Greta",
                      "Hugo",  "Ines",  "Jonas", "Karin", "Luca",  "Maria", "Nils",
                      "Olga",  "Pavel", "Rosa",  "Stefan", "Tomas", "Vera"};
const Words kLast = {"Keller", "Novak",  "Moreau", "Lindqvist", "Costa", "Brandt",
                     "Okafor", "Tanaka", "Silva",  "Weber",     "Horvat", "Petrov",
                     "Jensen", "Romero", "Fischer", "Kowalski", "Duval", "Marsh",
                     "Quinn",  "Arden"};
const Words kAcronyms = {"UN", "EU", "NATO", "IMF", "WHO", "OPEC", "ASEAN", "FIFA", "WTO"};
const Words kBodies = {"Security Council", "World Bank",    "Central Bank",
                       "Supreme Court",    "Red Cross",     "Labour Party",
                       "Finance Ministry", "Health Ministry"};
const Words kPlaces = {"Georgia", "Kenya", "Brazil", "Norway", "Chile",  "Vietnam",
                       "Egypt",   "Poland", "Peru",  "Canada", "Nepal",  "Ghana",
                       "Oslo",    "Lima",  "Hanoi",  "Cairo",  "Warsaw", "Nairobi",
                       "Geneva",  "Vienna"};
const Words kMonths = {"January", "February", "March",     "April",   "May",      "June",
                       "July",    "August",   "September", "October", "November", "December"};
const Words kRoles = {"President", "Premier", "Envoy", "Governor", "Chancellor"};
const Words kGroups = {"Police", "Officials", "Rebels", "Farmers", "Doctors", "Unions"};
const Words kModals = {"will", "could", "should", "must", "can", "would"};
const Words kNegModals = {"won't", "couldn't", "shouldn't", "mustn't", "can't", "wouldn't"};

struct Verb {
  const char* bare;
  const char* third;
};
const std::vector<Verb> kVerbs = {
    {"sign", "signs"},       {"approve", "approves"}, {"reject", "rejects"},
    {"extend", "extends"},   {"launch", "launches"},  {"seek", "seeks"},
    {"back", "backs"},       {"delay", "delays"},     {"propose", "proposes"},
    {"end", "ends"},         {"open", "opens"},       {"block", "blocks"},
    {"review", "reviews"},   {"announce", "announces"}, {"suspend", "suspends"},
    {"boost", "boosts"},     {"cut", "cuts"},         {"raise", "raises"},
    {"ban", "bans"},         {"welcome", "welcomes"}};

const Words kObjects = {
    "mandate of the mission",     "new trade deal",
    "peace talks",                "ban on fishing",
    "aid package for farmers",    "plan to cut taxes",
    "budget for next year",       "deal on gas prices",
    "probe into bank fraud",      "new security pact",
    "rules on food imports",      "bid to host the games",
    "reform of the pension system", "talks on climate targets",
    "curbs on steel exports",     "loan to rebuild roads",
    "vote on the new constitution", "inquiry into the crash",
    "ceasefire in the north",     "limits on bank bonuses",
    "funding for rural schools",  "deal to free hostages",
    "tax on fuel",                "merger of two airlines",
    "sale of state assets",       "strike by rail workers",
    "search for missing miners",  "talks with striking nurses"};

// Modifier templates; '@P' is a place, '@M' a month, '@B' a body or acronym.
const Words kModifiers = {
    "with @P",           "in @P",
    "in @M",             "by @M",
    "after talks in @P", "despite protests",
    "amid growing tensions", "ahead of the summit in @P",
    "under pressure from @B", "for two more years",
    "for three years",   "over the border dispute",
    "after the vote",    "at the request of @B",
    "before the end of @M", "on behalf of @B"};
const Words kFill = {"again", "soon", "now"};

const std::vector<Words> kLeads = {
    {"sources", "said", "late", "tuesday", "that"},
    {"officials", "confirmed", "that"},
    {"it", "emerged", "this", "week", "that"},
    {"per", "a", "press", "statement", "released", "yesterday"},
    {"reporters", "were", "told", "that"},
    {"state", "radio", "announced", "that"},
    {"a", "spokesman", "revealed", "late", "monday", "that"},
    {"briefed", "diplomats", "said"},
    {"witnesses", "reported", "that"},
    {"local", "media", "claimed", "early", "friday", "that"}};
const std::vector<Words> kTails = {
    {"a", "spokesman", "told", "reporters"},
    {"local", "media", "reported"},
    {"sources", "said", "late", "tuesday"},
    {"state", "radio", "said"},
    {"officials", "confirmed", "yesterday"},
    {"witnesses", "said", "afterwards"},
    {"briefed", "diplomats", "said"}};

// Target core lengths 7..16, peaked at 11-13.
constexpr int kLengthWeights[] = {4, 6, 8, 10, 12, 13, 12, 10, 8, 6};

Words Split(const std::string& s) { return SplitWords(s); }

Words Subject(Rng& rng) {
  switch (rng.Below(4)) {
    case 0: return {rng.Pick(kAcronyms)};
    case 1: return {rng.Pick(kRoles), rng.Pick(kFirst), rng.Pick(kLast)};
    case 2: return Split(rng.Pick(kBodies));
    default: return {rng.Pick(kGroups), "in", rng.Pick(kPlaces)};
  }
}

Words Modifier(Rng& rng) {
  Words out;
  for (const auto& w : Split(rng.Pick(kModifiers))) {
    if (w == "@P") {
      out.push_back(rng.Pick(kPlaces));
    } else if (w == "@M") {
      out.push_back(rng.Pick(kMonths));
    } else if (w == "@B") {
      if (rng.Below(2) == 0) {
        out.push_back(rng.Pick(kAcronyms));
      } else {
        for (auto& b : Split(rng.Pick(kBodies))) out.push_back(b);
      }
    } else {
      out.push_back(w);
    }
  }
  return out;
}

size_t SampleLength(Rng& rng) {
  int total = 0;
  for (int w : kLengthWeights) total += w;
  int u = static_cast<int>(rng.Below(static_cast<uint64_t>(total)));
  for (size_t i = 0; i < std::size(kLengthWeights); ++i) {
    if (u < kLengthWeights[i]) return 7 + i;
    u -= kLengthWeights[i];
  }
  return 16;
}

Words Core(size_t target, Rng& rng) {
  for (;;) {
    Words core = Subject(rng);
    const Verb& verb = rng.Pick(kVerbs);
    const uint64_t aux = rng.Below(20);
    if (aux < 14) {
      core.push_back(rng.Pick(kModals));
      core.push_back(verb.bare);
    } else if (aux < 17) {
      core.push_back(rng.Pick(kNegModals));
      core.push_back(verb.bare);
    } else {
      core.push_back(verb.third);
    }
    for (auto& w : Split(rng.Pick(kObjects))) core.push_back(w);
    if (core.size() > target) continue;
    int attempts = 0;
    while (core.size() < target && attempts < 50) {
      ++attempts;
      const size_t room = target - core.size();
      if (room == 1) {
        core.push_back(rng.Pick(kFill));
        break;
      }
      Words mod = Modifier(rng);
      if (mod.size() <= room) core.insert(core.end(), mod.begin(), mod.end());
    }
    if (core.size() == target) return core;
  }
}

}  // namespace

std::vector<corruptor::SummaryPair> SynthCorpus(size_t n, uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "corpus size must be >= 1");
  Rng rng(seed);
  std::vector<corruptor::SummaryPair> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Words core = Core(SampleLength(rng), rng);
    Words src = rng.Pick(kLeads);
    src.insert(src.end(), core.begin(), core.end());
    if (rng.Below(2) == 0) {
      src.push_back(",");
      const Words& tail = rng.Pick(kTails);
      src.insert(src.end(), tail.begin(), tail.end());
    }
    src.push_back(".");
    out.push_back({JoinWords(src), JoinWords(core)});
  }
  return out;
}

}  // namespace ogsum::pipeline
