#ifndef CYCLO_ERRORS_HPP
#define CYCLO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cyclo {

// Polynomial division left a nonzero remainder. Always signals a bug or
// invalid input; results are never silently truncated.
struct inexact_division : std::domain_error {
    explicit inexact_division(const std::string& what) : std::domain_error(what) {}
};

// A configured limit (sieve range, degree cap, precision cap, k cap) was hit.
struct capacity_exceeded : std::length_error {
    explicit capacity_exceeded(const std::string& what) : std::length_error(what) {}
};

// Requested working precision above the configured cap.
struct precision_exceeded : std::length_error {
    explicit precision_exceeded(const std::string& what) : std::length_error(what) {}
};

// A prime tuple failed validation (even prime, composite entry, not ascending).
struct bad_tuple : std::invalid_argument {
    explicit bad_tuple(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested at a degenerate witness point (gcd(a, M) > 1).
struct degenerate_point : std::domain_error {
    explicit degenerate_point(const std::string& what) : std::domain_error(what) {}
};

// A record store line failed to parse; the message names the line number.
struct store_parse_error : std::runtime_error {
    store_parse_error(const std::string& what, size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    size_t line_number;
};

} // namespace cyclo

#endif
