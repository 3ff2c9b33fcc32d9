#include <cstdio>
#include <filesystem>

#include "clusterlab/errors.hpp"
#include "clusterlab/io.hpp"
#include "doctest.h"

using namespace clusterlab;

TEST_CASE("lattice JSON roundtrip") {
  for (const char* name : {"z2", "tri", "hex", "kagome", "bcc", "rect:2,1"}) {
    LatticePtr L = builtin_lattice(name);
    LatticePtr back = parse_lattice_json(lattice_to_json(*L));
    INFO(name);
    CHECK(back->digest() == L->digest());
    CHECK(back->name() == L->name());
  }
  LatticePtr d = hypercubic(2)->with_direction({1, 2});
  CHECK(parse_lattice_json(lattice_to_json(*d))->direction() == d->direction());
}

TEST_CASE("lattice JSON uses 1-based offsets") {
  const char* compact = R"({"name": "pendant", "dimension": 2,
    "generators": [["1", "0"], ["0", "1"]],
    "offsets": [["0", "0"], ["1/2", "1/2"]],
    "bond_generators": [[1, 1, [1, 0]], [1, 1, [0, 1]], [1, 2, [0, 0]]]})";
  LatticePtr L = parse_lattice_json(compact);
  CHECK(L->num_offsets() == 2);
  CHECK(L->degree(1) == 1);
  CHECK(L->digest() == dead_end()->digest());

  const char* objects = R"({"dimension": 2, "generators": [[1, 0], [0, 1]], "offsets": [[0, 0], ["1/2", "1/2"]],
    "bonds": [{"from": 1, "to": 1, "cell": [1, 0]}, {"from": 1, "to": 1, "cell": [0, 1]},
              {"from": 1, "to": 2, "cell": [0, 0]}]})";
  CHECK(parse_lattice_json(objects)->digest() == dead_end()->digest());
  CHECK(lattice_to_json(*L).find("\"bond_generators\"") != std::string::npos);
}

TEST_CASE("lattice JSON errors") {
  CHECK_THROWS_AS(parse_lattice_json("{"), ParseError);
  CHECK_THROWS_AS(parse_lattice_json(R"({"dimension": 2})"), ParseError);
  CHECK_THROWS_AS(parse_lattice_json(R"({"dimension": 2, "generators": [[1,0],[0,1]], "offsets": [[0,0]],
    "bond_generators": [[1, 1, [1]]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_lattice_json(R"({"dimension": 2, "generators": [[1,0],[0,1]], "offsets": [[0,0]],
    "bond_generators": [[0, 1, [1, 0]]]})"),
                  InvalidArgument);
}

TEST_CASE("pattern JSON roundtrip") {
  LatticePtr z2 = hypercubic(2);
  const char* text = R"({"P1": [{"site": [1, 0, 0]}, {"site": [1, 1, 0]}, {"bond": [[1, 0, 0], [1, 1, 0]]}],
                         "P2": [{"site": [1, 0, 1]}]})";
  Pattern p = parse_pattern_json(*z2, text);
  CHECK(p.p1.sites.size() == 2);
  CHECK(p.p1.bonds.size() == 1);
  CHECK(p.p2.sites.size() == 1);
  CHECK(parse_pattern_json(*z2, pattern_to_json(p, 2)) == p);
  CHECK_THROWS_AS(parse_pattern_json(*z2, R"({"P1": [{"site": [2, 0, 0]}]})"), ParseError);
  CHECK_THROWS_AS(parse_pattern_json(*z2, R"({"P1": [{"bond": [[1, 0, 0], [1, 2, 0]]}]})"), ParseError);
}

TEST_CASE("series CSV") {
  const char* text =
      "#manifest: {\"lattice\": \"tri\", \"class\": \"bond-tree\", \"measure\": \"sites\", \"weights\": \"unit\"}\n"
      "# comment\n"
      "n,count\n"
      "1,1\n"
      "2,3\r\n"
      "3,17/2,ignored\n"
      "4,,0.25\n";
  SeriesTable s = parse_series_csv(text);
  CHECK(s.lattice == "tri");
  CHECK(s.cls == "bond-tree");
  REQUIRE(s.rows.size() == 4);
  CHECK(s.rows[2].value == Scalar(mpq_class(17, 2)));
  CHECK(s.rows[3].value == Scalar(mpq_class(1, 4)));
  CHECK_THROWS_AS(parse_series_csv("1;2\n"), ParseError);
  CHECK_THROWS_AS(parse_series_csv("x,2\n"), ParseError);
}

TEST_CASE("atomic writes leave no temporary file") {
  const std::string path = (std::filesystem::temp_directory_path() / "clusterlab_io_test.txt").string();
  write_file_atomic(path, "abc\n");
  CHECK(read_file(path) == "abc\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), InvalidArgument);
}
