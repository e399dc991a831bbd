#pragma once

#include <string>

#include "drchaos/nagroup.hpp"

namespace drchaos {

/// A named space: the H-type structure plus a label used in reports.
struct SpaceConfig {
    std::string name;
    HTypeStructure htype;

    const DRSpaceParams& params() const noexcept { return htype.params; }
};

/// Parses a space description in JSON.
///
///   {"kind": "heisenberg", "k": 1}
///   {"kind": "quaternionic"}
///   {"kind": "custom", "J": [[[0,-1],[1,0]]]}          (list of l square m x m matrices)
///
/// An optional "name" field overrides the default label. Throws DomainError.
SpaceConfig parse_space_json(const std::string& text);

/// Resolves a builtin name ("heisenberg<k>", "quaternionic") or a path to a JSON file.
SpaceConfig load_space(const std::string& name_or_path);

/// JSON form of a space (round-trips through parse_space_json).
std::string space_to_json(const SpaceConfig& space);

}  // namespace drchaos
