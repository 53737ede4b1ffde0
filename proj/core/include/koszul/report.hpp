#pragma once

#include <string>
#include <vector>

#include "koszul/complexes.hpp"

namespace koszul {

struct CheckEntry {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string witness;  // failure detail or skip reason
};

/// Machine- and human-readable command output. JSON serialization is
/// byte-deterministic for identical invocations.
struct Report {
    std::string presentation_digest;
    std::string command;
    std::vector<HHEntry> tables;
    std::vector<CheckEntry> checks;
    bool estimate = false;
    std::vector<std::string> notes;

    bool all_pass() const;
    std::string to_json() const;
    std::string to_text() const;
};

/// FNV-1a 64 over the raw presentation file bytes.
std::string content_digest(const std::string& content);

}  // namespace koszul
