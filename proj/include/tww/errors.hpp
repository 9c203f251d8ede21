#pragma once

#include <stdexcept>
#include <string>

namespace tww {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is not a partial order (the cover digraph has a cycle).
struct CycleDetected : Error { using Error::Error; };

struct IdOutOfRange : Error { using Error::Error; };

// Contraction of a vertex that was already merged away.
struct VertexNotLive : Error { using Error::Error; };

// Neighbourly operation on the top vertex of its chain.
struct NoSuccessor : Error { using Error::Error; };

// Red-bar orientation asked for a pair that is not red.
struct NotRed : Error { using Error::Error; };

struct InvalidPartition : Error { using Error::Error; };

struct NoEligibleContraction : Error { using Error::Error; };

struct MalformedSequence : Error { using Error::Error; };

struct BadParameters : Error { using Error::Error; };

// Exact search ran past its configured state budget or size cap.
struct BudgetExceeded : Error { using Error::Error; };

// An internal algorithm invariant failed; indicates a bug, not bad input.
struct InvariantBroken : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& what, int line_no)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  int line;
};

}  // namespace tww
