#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "asx/engine.hpp"
#include "asx/io.hpp"

using namespace asx;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = ASX_DATA_DIR;

std::vector<std::string> scheme_files() {
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(kDataDir + "/schemes"))
        out.push_back(entry.path().string());
    for (const auto& entry : fs::directory_iterator(kDataDir + "/nonschurian"))
        out.push_back(entry.path().string());
    return out;
}

}  // namespace

TEST_CASE("parse_scheme on the cyclic order-3 matrix") {
    Scheme z3 = parse_scheme("3 3\n0 1 2\n2 0 1\n1 2 0\n");
    CHECK(z3.order == 3);
    CHECK(z3.cell_count == 3);
    CHECK(z3.color(1, 0) == 2);

    // comments and CRLF are tolerated
    Scheme z3b = parse_scheme("# cyclic\r\n3 3\r\n0 1 2 # row 0\r\n2 0 1\r\n1 2 0\r\n");
    CHECK(z3b.colors == z3.colors);
}

TEST_CASE("parse_scheme rejects invalid input") {
    // not a scheme: A1 fails
    CHECK_THROWS_AS(static_cast<void>(parse_scheme("2 2\n0 1\n1 1\n")), Error);
    // header cell count mismatch
    CHECK_THROWS_AS(static_cast<void>(parse_scheme("3 2\n0 1 2\n2 0 1\n1 2 0\n")), Error);
    // truncated matrix
    try {
        static_cast<void>(parse_scheme("3 3\n0 1 2\n2 0\n"));
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::ParseError);
    }
    // garbage token
    CHECK_THROWS_AS(static_cast<void>(parse_scheme("3 x\n")), Error);
}

TEST_CASE("serialize/parse roundtrips on every bundled scheme") {
    for (const auto& path : scheme_files()) {
        INFO("file ", path);
        Scheme scheme = parse_scheme(read_file(path));
        Scheme again = parse_scheme(serialize_scheme(scheme));
        CHECK(again.colors == scheme.colors);
        CHECK(again.order == scheme.order);
    }
}

TEST_CASE("generator files") {
    PermGroup c3 = parse_generators("3 1\n1 2 0\n");
    CHECK(c3.degree == 3);
    REQUIRE(c3.generators.size() == 1);
    CHECK(c3.generators[0] == std::vector<int>{1, 2, 0});

    PermGroup again = parse_generators(serialize_generators(c3));
    CHECK(again.generators == c3.generators);

    try {
        static_cast<void>(parse_generators("2 1\n0 0\n"));
        FAIL("expected NotBijection");
    } catch (const Error& e) {
        CHECK(e.kind() == Errc::NotBijection);
    }
    CHECK_THROWS_AS(static_cast<void>(parse_generators("3 1\n0 1 5\n")), Error);
}

TEST_CASE("extension files roundtrip the engine output") {
    Scheme k3 = parse_scheme(read_file(kDataDir + "/schemes/k3.scm"));
    ExtendResult res = extend(k3, 1);
    REQUIRE(res.extensible());
    std::string text = serialize_extension(*res.extension);
    // header and block structure
    CHECK(text.rfind("3 1\n", 0) == 0);
    CHECK(text.find("cells 2\n") != std::string::npos);
    CHECK(text.find("cells 5\n") != std::string::npos);

    Extension parsed = parse_extension(text);
    CHECK(parsed.base.colors == res.extension->base.colors);
    CHECK(parsed.layers[0].colors == res.extension->layers[0].colors);
    CHECK(parsed.layers[0].cell_count == 5);
}

TEST_CASE("parse_extension rejects malformed files") {
    Scheme k3 = parse_scheme(read_file(kDataDir + "/schemes/k3.scm"));
    std::string text = serialize_extension(*extend(k3, 1).extension);

    // truncation
    CHECK_THROWS_AS(static_cast<void>(parse_extension(text.substr(0, text.size() / 2))), Error);
    // trailing garbage
    CHECK_THROWS_AS(static_cast<void>(parse_extension(text + "\n7\n")), Error);
    // missing "cells" keyword
    std::string no_keyword = text;
    no_keyword.replace(no_keyword.find("cells"), 5, "block");
    CHECK_THROWS_AS(static_cast<void>(parse_extension(no_keyword)), Error);
    // a color out of the declared range
    CHECK_THROWS_AS(
        static_cast<void>(parse_extension("3 0\ncells 2\n0 1 1\n1 0 1\n1 1 2\n")), Error);
}

TEST_CASE("ingest_catalog") {
    CatalogReport report = ingest_catalog(kDataDir + "/schemes");
    CHECK(report.schemes.size() == 6);
    CHECK(report.failures.empty());
    // deterministic filename order
    for (std::size_t i = 1; i < report.schemes.size(); ++i)
        CHECK(report.schemes[i - 1].name < report.schemes[i].name);

    SUBCASE("one-based catalogs shift down to the same schemes") {
        fs::path tmp = fs::temp_directory_path() / "asx_io_test_catalog";
        fs::create_directories(tmp);
        for (const auto& entry : report.schemes) {
            std::ostringstream shifted;
            shifted << entry.scheme.order << ' ' << entry.scheme.cell_count << '\n';
            for (int x = 0; x < entry.scheme.order; ++x) {
                for (int y = 0; y < entry.scheme.order; ++y)
                    shifted << entry.scheme.color(x, y) + 1 << ' ';
                shifted << '\n';
            }
            std::ofstream(tmp / entry.name) << shifted.str();
        }
        CatalogReport shifted = ingest_catalog(tmp, true);
        REQUIRE(shifted.schemes.size() == report.schemes.size());
        for (std::size_t i = 0; i < shifted.schemes.size(); ++i)
            CHECK(shifted.schemes[i].scheme.colors == report.schemes[i].scheme.colors);
        fs::remove_all(tmp);
    }

    SUBCASE("invalid files are collected, not fatal") {
        fs::path tmp = fs::temp_directory_path() / "asx_io_test_bad";
        fs::create_directories(tmp);
        std::ofstream(tmp / "good.scm") << "3 3\n0 1 2\n2 0 1\n1 2 0\n";
        std::ofstream(tmp / "bad.scm") << "2 2\n0 1\n1 1\n";
        CatalogReport mixed = ingest_catalog(tmp);
        CHECK(mixed.schemes.size() == 1);
        REQUIRE(mixed.failures.size() == 1);
        CHECK(mixed.failures[0].name == "bad.scm");
        fs::remove_all(tmp);
    }
}

TEST_CASE("read_file reports missing paths") {
    CHECK_THROWS_AS(static_cast<void>(read_file(kDataDir + "/does_not_exist")), Error);
}
