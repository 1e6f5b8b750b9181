#pragma once

#include <string>
#include <vector>

// Cross-validation battery behind `wpshift validate`.

namespace wavepacket::validation {

enum class Level { Fast, Full };

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Non-gating rows document known discrepancies in printed formulas.
    bool gating = true;
    std::string note;
};

struct Report {
    std::vector<Check> checks;

    /// All gating rows pass; with `strict`, non-gating rows must pass too.
    [[nodiscard]] bool passed(bool strict = false) const;
    [[nodiscard]] std::string format() const;
};

[[nodiscard]] Report run(Level level);

}  // namespace wavepacket::validation
