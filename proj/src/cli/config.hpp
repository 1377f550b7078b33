#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "salem/gensalem.hpp"

namespace salem::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PointParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    GenSalemSpec spec;
    std::optional<ProbabilitySchedule> schedule;
    double tol = 1e-12;
    std::uint64_t seed = 0;

    ProbabilitySchedule effective_schedule() const { return schedule ? *schedule : spec.schedule(); }
};

// Parses a JSON document of the form
//   {"q": 2, "P": [0.5, "0.5"], "R": ["3/10", 0.7],
//    "perm": {"kind": "identity" | "finite", "table": [...] | "block", "b": B, "map": [...]},
//    "schedule": [[...], ...], "tol": 1e-12, "seed": 7}
// Throws ConfigError naming the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// "digits:<list>;tail:(zeros|max|periodic:<list>|seeded:<int>)"
DigitString parse_digit_literal(const std::string& text, unsigned radix);

using Point = std::variant<double, DigitString>;
Point parse_point(const std::string& text, unsigned radix);

}  // namespace salem::cli
