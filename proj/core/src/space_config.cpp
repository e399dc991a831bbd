#include "drchaos/space_config.hpp"

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "drchaos/errors.hpp"

namespace drchaos {

using nlohmann::json;

namespace {

SpaceConfig heisenberg_space(int k) { return {"heisenberg" + std::to_string(k), build_heisenberg(k)}; }

}  // namespace

SpaceConfig parse_space_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("space config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw DomainError("space config needs a string field \"kind\"");
    }
    const std::string kind = doc["kind"];
    std::optional<SpaceConfig> out;
    try {
        if (kind == "heisenberg") {
            const int k = doc.value("k", 1);
            out = heisenberg_space(k);
        } else if (kind == "quaternionic") {
            out = SpaceConfig{"quaternionic", build_quaternionic()};
        } else if (kind == "custom") {
            if (!doc.contains("J") || !doc["J"].is_array()) throw DomainError("custom space needs \"J\"");
            if (doc["J"].empty()) {
                // l = 0: real hyperbolic case, only dim v is needed.
                if (!doc.contains("m")) throw DomainError("custom space with empty J needs \"m\"");
                out = SpaceConfig{"custom", HTypeStructure{DRSpaceParams::from_dims(doc["m"].get<int>(), 0), {}}};
            } else {
                std::vector<Eigen::MatrixXd> J;
                for (const auto& mat : doc["J"]) {
                    const auto rows = mat.size();
                    Eigen::MatrixXd M(rows, rows);
                    for (std::size_t i = 0; i < rows; ++i) {
                        if (mat[i].size() != rows) throw DomainError("custom J matrices must be square");
                        for (std::size_t j = 0; j < rows; ++j) M(i, j) = mat[i][j].get<double>();
                    }
                    J.push_back(std::move(M));
                }
                out = SpaceConfig{"custom", build_custom(std::move(J))};
            }
        } else {
            throw DomainError("unknown space kind \"" + kind + "\"");
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed space config: ") + e.what());
    }
    if (doc.contains("name") && doc["name"].is_string()) out->name = doc["name"];
    return *out;
}

SpaceConfig load_space(const std::string& name_or_path) {
    static const std::regex heis(R"(heisenberg(\d+))");
    std::smatch match;
    if (std::regex_match(name_or_path, match, heis)) return heisenberg_space(std::stoi(match[1]));
    if (name_or_path == "quaternionic") return {"quaternionic", build_quaternionic()};

    std::ifstream in(name_or_path);
    if (!in) throw DomainError("unknown space \"" + name_or_path + "\" (not a builtin name or readable file)");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_space_json(buf.str());
}

std::string space_to_json(const SpaceConfig& space) {
    json doc;
    doc["name"] = space.name;
    const auto& p = space.params();
    doc["kind"] = "custom";
    json mats = json::array();
    for (const auto& M : space.htype.J) {
        json rows = json::array();
        for (int i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    doc["J"] = mats;
    doc["m"] = p.m();
    doc["l"] = p.l();
    doc["Q"] = p.Q();
    doc["rho"] = p.rho();
    return doc.dump();
}

}  // namespace drchaos
