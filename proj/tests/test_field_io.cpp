#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "elri/errors.hpp"
#include "elri/field_io.hpp"
#include "elri/rough_data.hpp"

using namespace elri;

TEST_CASE("binary round trip is bit-exact") {
    const Field f = generate_rough({64, 1.5, 7});
    std::stringstream ss;
    io::write_binary(f, ss);
    CHECK(ss.str().size() == 12 + 64 * 8);
    CHECK(ss.str().substr(0, 4) == "KDVF");
    const Field g = io::read_binary(ss);
    REQUIRE(g.size() == f.size());
    CHECK(std::memcmp(f.values().data(), g.values().data(), 64 * sizeof(double)) == 0);
}

TEST_CASE("csv round trip is exact at 17 digits") {
    const Field f = generate_rough({32, 0.5, 3});
    std::stringstream ss;
    io::write_csv(f, ss);
    CHECK(ss.str().rfind("# n=32 length=6.2831853071795862\n", 0) == 0);
    const Field g = io::read_csv(ss);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(f[j] == g[j]);
}

TEST_CASE("malformed input throws IoError") {
    std::stringstream bad("KDVX");
    CHECK_THROWS_AS(io::read_binary(bad), IoError);
    std::stringstream truncated("# n=8 length=6.2831853071795862\n0.1\n0.2\n");
    CHECK_THROWS_AS(io::read_csv(truncated), IoError);
    std::stringstream junk("# n=4 length=6.2831853071795862\n0.1\nabc\n0\n0\n");
    CHECK_THROWS_AS(io::read_csv(junk), IoError);
}

TEST_CASE("save and load dispatch on extension") {
    const auto dir = std::filesystem::temp_directory_path();
    const Field f = generate_rough({16, 1.0, 1});
    for (const char* name : {"elri_io_test.bin", "elri_io_test.kdvf", "elri_io_test.csv"}) {
        const auto p = dir / name;
        io::save(f, p);
        const Field g = io::load(p);
        for (std::size_t j = 0; j < f.size(); ++j) CHECK(f[j] == g[j]);
        std::filesystem::remove(p);
    }
    CHECK_THROWS_AS(io::load(dir / "elri_missing_dir" / "x.bin"), IoError);
}
