#pragma once

#include <stdexcept>
#include <string>

namespace starclip {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph mutations
struct LoopEdge : Error { using Error::Error; };
struct InactiveVertex : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct AdjacentPair : Error { using Error::Error; };
struct TooFewVertices : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// game state machines
struct WrongPhase : Error { using Error::Error; };
struct NoLegalMove : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct AlreadyClaimed : Error { using Error::Error; };
struct GameOver : Error { using Error::Error; };
struct WrongTiming : Error { using Error::Error; };
struct StrategyStuck : Error { using Error::Error; };

// adversaries
struct ScriptExhausted : Error { using Error::Error; };
struct NoMoves : Error { using Error::Error; };

// solver
struct BudgetExceeded : Error { using Error::Error; };
struct ModeUnavailable : Error { using Error::Error; };

// harness
struct NotSparse : Error { using Error::Error; };

}  // namespace starclip
