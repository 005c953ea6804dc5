#include "eqra/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace eqra {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Info: return "info";
    }
    return "?";
}

Check& Certificate::add(std::string name, CheckStatus status, std::string detail,
                        nlohmann::ordered_json witness) {
    checks_.push_back({std::move(name), status, std::move(detail), std::move(witness)});
    return checks_.back();
}

Check& Certificate::expect(std::string name, bool ok, std::string detail,
                           nlohmann::ordered_json witness) {
    return add(std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail),
               ok ? nlohmann::ordered_json(nullptr) : std::move(witness));
}

void Certificate::merge(const Certificate& other, const std::string& prefix) {
    for (const auto& c : other.checks_) {
        Check copy = c;
        copy.name = prefix.empty() ? c.name : prefix + "/" + c.name;
        checks_.push_back(std::move(copy));
    }
}

void Certificate::downgrade_failures(const std::string& reason) {
    for (auto& c : checks_) {
        if (c.status != CheckStatus::Fail) continue;
        c.status = CheckStatus::Info;
        c.detail += c.detail.empty() ? reason : " (" + reason + ")";
    }
}

bool Certificate::passed() const { return count(CheckStatus::Fail) == 0; }

std::size_t Certificate::count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [s](const Check& c) { return c.status == s; }));
}

nlohmann::ordered_json Certificate::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = command_;
    j["tool_version"] = kToolVersion;
    j["inputs"] = inputs_;
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = to_string(c.status);
        e["detail"] = c.detail;
        if (!c.witness.is_null()) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    j["overall"] = passed() ? "pass" : "fail";
    if (include_timing) j["elapsed_ms"] = elapsed_ms_;
    return j;
}

std::string Certificate::to_text() const {
    std::ostringstream out;
    out << command_ << "\n";
    for (const auto& c : checks_) {
        out << "  [" << to_string(c.status) << "] " << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
        if (!c.witness.is_null()) out << "      witness: " << c.witness.dump() << "\n";
    }
    out << "overall: " << (passed() ? "pass" : "fail") << " (" << checks_.size() << " checks, "
        << count(CheckStatus::Fail) << " failed)\n";
    return out.str();
}

}  // namespace eqra
