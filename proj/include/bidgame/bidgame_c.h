// Copyright 2026 The bidgame Authors
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

/* Stable C interface of the bidgame library.
 *
 * Objects are opaque handles. Every call returns a status code; on failure
 * bg_last_error() describes the problem for the calling thread. Results are
 * JSON documents returned as heap strings that the caller releases with
 * bg_string_free(). Options are JSON objects; NULL or "" means defaults.
 * Exact values appear as "p/q" strings.
 */
#ifndef BIDGAME_BIDGAME_C_H_
#define BIDGAME_BIDGAME_C_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BG_API __declspec(dllexport)
#else
#define BG_API __attribute__((visibility("default")))
#endif

typedef struct bg_arena bg_arena;

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_PARSE = 1,      /* malformed game text */
  BG_ERR_VALIDATION = 2, /* arena violates a structural invariant */
  BG_ERR_DOMAIN = 3,     /* precondition of the operation does not hold */
  BG_ERR_INTERNAL = 4,   /* a certificate failed its own check */
  BG_ERR_IO = 5,         /* file could not be read */
  BG_ERR_ARGUMENT = 6    /* bad handle, option or option value */
} bg_status;

BG_API const char* bg_version(void);
BG_API const char* bg_status_name(bg_status status);
/* Message of the last failed call on this thread, or "". */
BG_API const char* bg_last_error(void);
BG_API void bg_string_free(char* s);

BG_API bg_status bg_arena_load(const char* text, bg_arena** out);
BG_API bg_status bg_arena_load_file(const char* path, bg_arena** out);
BG_API void bg_arena_free(bg_arena* arena);
/* Game text of the arena. */
BG_API bg_status bg_arena_serialize(const bg_arena* arena, char** out);
/* "player1", "player2", "alternate=1" or "alternate=2". */
BG_API bg_status bg_arena_set_tie_rule(bg_arena* arena, const char* rule);
/* {"objective", "vertices": [...], "edges": [...], "tie"} */
BG_API bg_status bg_arena_info(const bg_arena* arena, char** out_json);

/* Thresholds. Options: "iterate" (int, finite-horizon R instead of the
 * fixed point), "ssg" (bool), "ssg_tol" (number), "markov" (bool),
 * "budget" and "start" (rounds needed to win from start). */
BG_API bg_status bg_solve(const bg_arena* arena, const char* options,
                          char** out_json);

/* Bottom components with their winners (parity) or weighted values,
 * contributions and scaling factors (mean-payoff). */
BG_API bg_status bg_classify(const bg_arena* arena, const char* options,
                             char** out_json);

/* Parameter block and bid table. Options: "player" (1, 2, "min", "max"),
 * "budget", "start", "energy", "kind" (strategy spec). */
BG_API bg_status bg_strategy(const bg_arena* arena, const char* options,
                             char** out_json);

/* Options: "p1", "p2" (strategy specs), "budget1", "start", "energy",
 * "horizon", "seed", "seeds" (batch size), "monitors" (array or "all"),
 * "records" (bool), "tail_window", "threads". */
BG_API bg_status bg_simulate(const bg_arena* arena, const char* options,
                             char** out_json);

/* Options: "mode" ("richman", "parity", "absorb", "loop"), "grid",
 * "horizon", "budget_index", "samples", "seed", "max_len", "start", "u",
 * "cap", "threads". */
BG_API bg_status bg_oracle(const bg_arena* arena, const char* options,
                           char** out_json);

/* Options: "to" ("ssg" or "richman"). Result: {"text": ...}. */
BG_API bg_status bg_reduce(const bg_arena* arena, const char* options,
                           char** out_json);

/* Options: "accepting" (vertex names), "cycle" (vertex names), "k".
 * Result: {"text": ...}. */
BG_API bg_status bg_unwind(const bg_arena* arena, const char* options,
                           char** out_json);

/* Asks a person for a move. `prompt_json` describes the state and, after a
 * rejected move, the reason. Fill `bid` and `edge` (edge id or vertex name
 * of the successor) as NUL-terminated strings. Return 0 to play the move,
 * nonzero to stop the episode. */
typedef int (*bg_move_fn)(void* user, const char* prompt_json, char* bid,
                          size_t bid_cap, char* edge, size_t edge_cap);

/* Runs the referee with one side driven by `fn`. Options as for
 * bg_simulate plus "as" (1 or 2) and "opponent" (strategy spec). The
 * result is the episode trace. */
BG_API bg_status bg_play(const bg_arena* arena, const char* options,
                         bg_move_fn fn, void* user, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* BIDGAME_BIDGAME_C_H_ */
