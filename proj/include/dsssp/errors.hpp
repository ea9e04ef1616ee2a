#pragma once

#include <stdexcept>
#include <string>

namespace dsssp {

// All failure modes surface as typed exceptions so callers (CLI, tests) can
// map them to exit codes without string matching.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed graph input: duplicate edge, self loop, weight out of [1, W],
// node id out of range, unparsable edge-list line.
struct GraphError : Error {
    explicit GraphError(const std::string& msg) : Error("graph error: " + msg) {}
};

// A required connectivity assumption does not hold (hop_diameter, congest runs).
struct DisconnectedGraph : Error {
    explicit DisconnectedGraph(const std::string& msg) : Error("disconnected graph: " + msg) {}
};

// A node id does not fit in the b = a*ceil(log2 n) bits the ruling-set
// bit schedule is allowed to use.
struct IdWidthExceeded : Error {
    explicit IdWidthExceeded(const std::string& msg) : Error("id width exceeded: " + msg) {}
};

// greedy_hitting_set was handed a collection containing an empty set.
struct Unhittable : Error {
    explicit Unhittable(const std::string& msg) : Error("unhittable collection: " + msg) {}
};

// A finite range parameter was not a nonnegative integer.
struct NonIntegralRange : Error {
    explicit NonIntegralRange(const std::string& msg) : Error("non-integral range: " + msg) {}
};

// A procedure precondition failed and the caller did not force execution.
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& msg) : Error("precondition violated: " + msg) {}
};

// A cost-model primitive was invoked on a ledger of the wrong model.
struct WrongModel : Error {
    explicit WrongModel(const std::string& msg) : Error("wrong model: " + msg) {}
};

// The streaming layer was asked to rewind a stream that cannot rewind.
struct NonRewindableStream : Error {
    explicit NonRewindableStream(const std::string& msg) : Error("non-rewindable stream: " + msg) {}
};

// CLI / config parse problems (exit code 2).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

// Checked 64-bit arithmetic overflowed. Exactness is preserved by failing
// loudly, never by wrapping.
struct Overflow : Error {
    explicit Overflow(const std::string& msg) : Error("arithmetic overflow: " + msg) {}
};

// An invariant that is a proved statement was observed false at runtime
// (always a bug somewhere, never expected control flow).
struct InvariantViolated : Error {
    explicit InvariantViolated(const std::string& msg) : Error("invariant violated: " + msg) {}
};

}  // namespace dsssp
