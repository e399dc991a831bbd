#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "drchaos/errors.hpp"
#include "drchaos/space_config.hpp"

using namespace drchaos;

TEST_CASE("builtin names") {
    const auto h = load_space("heisenberg1");
    CHECK(h.name == "heisenberg1");
    CHECK(h.params().rho() == 1.0);
    CHECK(load_space("heisenberg2").params().m() == 4);
    CHECK(load_space("quaternionic").params().l() == 3);
    CHECK_THROWS_AS(load_space("no-such-space"), DomainError);
    CHECK_THROWS_AS(load_space("heisenberg0"), DomainError);
}

TEST_CASE("JSON configs") {
    CHECK(parse_space_json(R"({"kind": "heisenberg", "k": 3})").params().m() == 6);
    CHECK(parse_space_json(R"({"kind": "quaternionic", "name": "H"})").name == "H");

    const auto custom = parse_space_json(R"({"kind": "custom", "J": [[[0, -1], [1, 0]]]})");
    CHECK(custom.params().m() == 2);
    CHECK(custom.params().l() == 1);

    const auto flat = parse_space_json(R"({"kind": "custom", "J": [], "m": 4})");
    CHECK(flat.params().l() == 0);
    CHECK(flat.params().rho() == 1.0);

    CHECK_THROWS_AS(parse_space_json("not json"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"k": 1})"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"kind": "octonionic"})"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"kind": "custom", "J": [[[0, 1], [1, 0]]]})"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"kind": "custom", "J": [[[0, -1, 0], [1, 0]]]})"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"kind": "custom", "J": []})"), DomainError);
    CHECK_THROWS_AS(parse_space_json(R"({"kind": "heisenberg", "k": "one"})"), DomainError);
}

TEST_CASE("space_to_json round-trips") {
    for (const char* name : {"heisenberg1", "heisenberg2", "quaternionic"}) {
        const auto s = load_space(name);
        const auto back = parse_space_json(space_to_json(s));
        CHECK(back.name == s.name);
        CHECK(back.params() == s.params());
        REQUIRE(back.htype.J.size() == s.htype.J.size());
        for (std::size_t i = 0; i < s.htype.J.size(); ++i) CHECK(back.htype.J[i] == s.htype.J[i]);
    }
}

TEST_CASE("config files") {
    const auto path = std::filesystem::temp_directory_path() / "drchaos_space_test.json";
    {
        std::ofstream os(path);
        os << R"({"kind": "heisenberg", "k": 2, "name": "h2"})";
    }
    const auto s = load_space(path.string());
    CHECK(s.name == "h2");
    CHECK(s.params().m() == 4);
    std::filesystem::remove(path);
}
