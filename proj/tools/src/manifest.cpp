#include "drchaos/tools/manifest.hpp"

#include <fstream>
#include <system_error>

#include "drchaos/errors.hpp"

#ifndef DRCHAOS_GIT_DESCRIBE
#define DRCHAOS_GIT_DESCRIBE "unknown"
#endif

namespace drchaos::tools {

namespace fs = std::filesystem;

std::string build_describe() { return DRCHAOS_GIT_DESCRIBE; }

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ContractError("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw ContractError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ContractError("cannot move output into place: " + path.string());
    }
}

RunManifest::RunManifest(fs::path dir, std::string command, std::vector<std::string> arguments)
    : dir_(std::move(dir)), command_(std::move(command)), arguments_(std::move(arguments)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw DomainError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void RunManifest::emit(const std::string& name, const std::string& content) {
    write_atomic(dir_ / name, content);
    outputs_.push_back(name);
}

void RunManifest::finish() const {
    nlohmann::json doc;
    doc["command"] = command_;
    doc["arguments"] = arguments_;
    doc["space"] = space;
    doc["parameters"] = parameters;
    doc["tolerances"] = tolerances;
    doc["git_describe"] = build_describe();
    doc["outputs"] = outputs_;
    write_atomic(dir_ / "manifest.json", doc.dump(2) + "\n");
}

}  // namespace drchaos::tools
