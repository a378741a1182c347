#pragma once

#include <string>

#include <json.hpp>

namespace netmorph {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Machine-readable run summary: resolved config echo, per-operation results,
// wall-clock timings. The config echo is sufficient to reproduce a run.
class RunReport {
public:
    explicit RunReport(const std::string& command);

    nlohmann::ordered_json& config() { return body_["config"]; }
    nlohmann::ordered_json& results() { return body_["results"]; }
    void add_timing(const std::string& name, double milliseconds);

    std::string dump(int indent = 2) const { return body_.dump(indent); }
    const nlohmann::ordered_json& json() const { return body_; }

private:
    nlohmann::ordered_json body_;
};

// Writes via a temp file in the same directory plus rename, so a failed run
// never leaves a partial artifact.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace netmorph
