#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace eqra {

enum class CheckStatus { Pass, Fail, Skipped, Info };

std::string to_string(CheckStatus s);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    nlohmann::ordered_json witness;  // null when there is nothing to show
};

// Machine-checkable record of a verification run. Overall pass iff no
// check failed.
class Certificate {
public:
    inline static const std::string kToolVersion = "0.1.0";

    explicit Certificate(std::string command = {}) : command_(std::move(command)) {}

    void set_input(const std::string& key, nlohmann::ordered_json value) { inputs_[key] = std::move(value); }
    Check& add(std::string name, CheckStatus status, std::string detail = {},
               nlohmann::ordered_json witness = nullptr);
    // Pass when ok, Fail otherwise.
    Check& expect(std::string name, bool ok, std::string detail = {},
                  nlohmann::ordered_json witness = nullptr);
    void merge(const Certificate& other, const std::string& prefix);
    // Turns every failing check into an informational one.
    void downgrade_failures(const std::string& reason);

    bool passed() const;
    std::size_t count(CheckStatus s) const;
    const std::vector<Check>& checks() const { return checks_; }
    const std::string& command() const { return command_; }
    const nlohmann::ordered_json& inputs() const { return inputs_; }

    void set_elapsed_ms(double ms) { elapsed_ms_ = ms; }
    double elapsed_ms() const { return elapsed_ms_; }

    nlohmann::ordered_json to_json(bool include_timing = false) const;
    std::string to_text() const;

private:
    std::string command_;
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::object();
    std::vector<Check> checks_;
    double elapsed_ms_ = 0;
};

}  // namespace eqra
