#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace drchaos::tools {

/// Version string baked in at configure time (git describe, or "unknown").
std::string build_describe();

/// Writes `content` to `path` through a temporary sibling and a rename, so readers never
/// see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Collects the files a command emits and writes manifest.json next to them.
///
/// manifest.json: {command, arguments, space, parameters, tolerances, git_describe, outputs}.
/// Listed outputs are file names relative to the output directory.
class RunManifest {
public:
    RunManifest(std::filesystem::path dir, std::string command, std::vector<std::string> arguments);

    nlohmann::json space;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json tolerances = nlohmann::json::object();

    /// Writes one output file and records it.
    void emit(const std::string& name, const std::string& content);
    /// Writes manifest.json. Called once, after the last emit().
    void finish() const;

    const std::filesystem::path& dir() const noexcept { return dir_; }
    const std::vector<std::string>& outputs() const noexcept { return outputs_; }

private:
    std::filesystem::path dir_;
    std::string command_;
    std::vector<std::string> arguments_;
    std::vector<std::string> outputs_;
};

}  // namespace drchaos::tools
