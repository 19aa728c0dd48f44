#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace strongcol {

// Base for everything thrown out of this library. Callers that want a single
// catch site can use this; the subclasses exist for the few places where the
// distinction changes control flow.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A vertex id outside [0, n) was handed to an operation.
struct invalid_vertex : error {
    explicit invalid_vertex(int v)
        : error("vertex id out of range: " + std::to_string(v)), vertex(v) {}
    int vertex;
};

// Structural preconditions (k >= 3, equal class sizes, k <= 25 for the
// subset sweep, ...). Message says which one.
struct precondition_failed : error {
    using error::error;
};

// An enumeration would exceed its configured cap.
struct cap_exceeded : error {
    cap_exceeded(const std::string& what, unsigned long long cap)
        : error(what), cap(cap) {}
    unsigned long long cap;
};

// Malformed graph / partition / weighting input.
struct parse_error : error {
    using error::error;
};

// A search ran out of its node budget before reaching a decision.
struct budget_exceeded : error {
    budget_exceeded(const std::string& what, unsigned long long budget)
        : error(what), budget(budget) {}
    unsigned long long budget;
};

// Generator parameters that contradict each other (degree bound below zero,
// class count not dividing the vertex count, ...).
struct infeasible_spec : error {
    using error::error;
};

// A search that may legitimately come up empty did so; the caller is
// expected to resample or fall back.
struct none_found : error {
    using error::error;
};

// No unconsumed family member could take the given balanced k-set.
struct absorption_failure : error {
    absorption_failure(const std::string& what, std::vector<int> chunk)
        : error(what), chunk(std::move(chunk)) {}
    std::vector<int> chunk;
};

// The staged colouring pipeline ran out of options. `stage` names the last
// stage that failed; the message carries the per-attempt notes.
struct pipeline_failure : error {
    pipeline_failure(const std::string& what, std::string stage)
        : error(what), stage(std::move(stage)) {}
    std::string stage;
};

// An exhaustive search proved that no solution exists for this input.
struct unsolvable : error {
    using error::error;
};

} // namespace strongcol
