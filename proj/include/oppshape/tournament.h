// Copyright 2026 The oppshape Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPPSHAPE_TOURNAMENT_H_
#define OPPSHAPE_TOURNAMENT_H_

// Cross-play of a roster of learners: the meta-game in which principals pick
// the learner that plays on their behalf.

#include <cstdint>
#include <string>
#include <vector>

#include "oppshape/experiments.h"
#include "oppshape/games.h"
#include "oppshape/learners.h"

namespace oppshape {

struct RosterEntry {
  std::string name;
  LearnerSpec spec;
};

using Roster = std::vector<RosterEntry>;

// naive, lola-1, lola-30, sos-1 and sos-30, all with delta = 1.
Roster DefaultRoster();

// Throws std::invalid_argument for fewer than two entries, duplicate or empty
// names, or invalid specs.
void ValidateRoster(const Roster& roster);

struct TournamentConfig {
  Game game = PrisonersDilemma();
  Roster roster = DefaultRoster();
  int steps = 1000;
  int runs = 100;
  std::uint64_t seed = 0;
};

struct CrossPlayCell {
  MeanSd payoff;  // final expected payoff of the row learner
  int diverged = 0;
  bool best_response = false;
};

struct CrossPlayMatrix {
  std::vector<std::string> names;
  // cells[row][column]
  std::vector<std::vector<CrossPlayCell>> cells;
  SosStats sos;
};

// Every unordered pair (i, j), i <= j, is trained once with roster[i] as
// player A and roster[j] as player B, seeded with DeriveSeed(seed, pair index)
// in row-major pair order. Cell (i, j) takes A's and cell (j, i) B's final
// payoffs; self-play cells pair two independently initialized learners and
// report player A. Best responses are marked.
CrossPlayMatrix CrossPlay(const TournamentConfig& cfg);

// Flags cell (i, j) iff mean(i, j) + se(i, j) >= max_k mean(k, j) - se(k, j).
void MarkBestResponses(CrossPlayMatrix& matrix);

}  // namespace oppshape

#endif  // OPPSHAPE_TOURNAMENT_H_
