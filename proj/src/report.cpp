#include "netmorph/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace netmorph {

RunReport::RunReport(const std::string& command) {
    body_["schema_version"] = kReportSchemaVersion;
    body_["tool_version"] = kToolVersion;
    body_["command"] = command;
    body_["config"] = nlohmann::ordered_json::object();
    body_["results"] = nlohmann::ordered_json::object();
    body_["timings_ms"] = nlohmann::ordered_json::object();
}

void RunReport::add_timing(const std::string& name, double milliseconds) {
    body_["timings_ms"][name] = milliseconds;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move " + tmp + " into place");
    }
}

} // namespace netmorph
