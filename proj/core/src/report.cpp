#include "koszul/report.hpp"

#include <json.hpp>

#include <sstream>

namespace koszul {

std::string content_digest(const std::string& content) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.skipped && !c.pass) return false;
    return true;
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["presentation"] = presentation_digest;
    j["command"] = command;
    j["estimate"] = estimate;
    nlohmann::json tables_j = nlohmann::json::array();
    for (const auto& t : tables) {
        nlohmann::json e;
        e["degree"] = t.degree;
        if (t.has_weight)
            e["weight"] = t.weight;
        else
            e["weight"] = nullptr;
        e["dim"] = t.dim;
        e["representatives"] = t.representatives;
        tables_j.push_back(std::move(e));
    }
    j["tables"] = std::move(tables_j);
    nlohmann::json checks_j = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (c.skipped) e["skipped"] = true;
        if (!c.witness.empty()) e["witness"] = c.witness;
        checks_j.push_back(std::move(e));
    }
    j["checks"] = std::move(checks_j);
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "# " << command << " (presentation " << presentation_digest << ")\n";
    if (estimate) os << "NOTE: dimensions below are truncation ESTIMATES, not exact values.\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    if (!tables.empty()) {
        bool weighted = tables.front().has_weight;
        os << (weighted ? "degree  weight  dim\n" : "degree  dim\n");
        for (const auto& t : tables) {
            os << "  " << t.degree;
            if (weighted) os << "\t" << t.weight;
            os << "\t" << t.dim << "\n";
            for (const auto& r : t.representatives) os << "      " << r << "\n";
        }
    }
    for (const auto& c : checks) {
        os << "check " << c.name << ": "
           << (c.skipped ? "SKIPPED" : (c.pass ? "pass" : "FAIL"));
        if (!c.witness.empty()) os << " (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace koszul
