#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "starclip/batch.hpp"
#include "starclip/pcg.hpp"

namespace starclip {

inline constexpr const char* kTranscriptVersion = "1";

// One game as a single JSON line. Keys are emitted in sorted order and the
// config echo omits anything host- or schedule-dependent, so a batch
// serializes to the same bytes however it was run.
std::string game_json_line(const GameReport& rep, const RunConfig& cfg);

void write_game_jsonl(std::ostream& os, const std::vector<GameReport>& reps,
                      const RunConfig& cfg);

// Clipping game transcript: start graph, one entry per round, result.
std::string pcg_transcript_json(const WorkGraph& start, const PcgGame& game,
                                const PcgMonitor& monitor, int indent = 2);

// n,k,outcome,nodes,table_hits,elapsed_ms,canonical_mode,budget_hit
std::string outcome_rows_csv(const std::vector<OutcomeRow>& rows);

}  // namespace starclip
