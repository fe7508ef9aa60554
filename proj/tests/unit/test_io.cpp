#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "stowave/errors.hpp"
#include "stowave/io.hpp"

using namespace stowave;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "stowave_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& file) {
    std::ifstream is(file, std::ios::binary);
    REQUIRE(static_cast<bool>(is));
    std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace

TEST_CASE("noise path round-trips bit for bit") {
    const fs::path file = scratch_dir() / "path.bin";
    const NoisePath path = sample_path(42, -2.0, 3.0, 0.25, 3);
    save_noise_path(path, file);
    const NoisePath back = load_noise_path(file);
    CHECK(back.seed == path.seed);
    CHECK(back.t_min == path.t_min);
    CHECK(back.t_max == path.t_max);
    CHECK(back.dt == path.dt);
    CHECK(back.m == path.m);
    CHECK(back.increments == path.increments);
}

TEST_CASE("noise path loading rejects damaged files") {
    const fs::path dir = scratch_dir();
    const NoisePath path = sample_path(7, -1.0, 1.0, 0.5, 1);

    const fs::path good = dir / "good.bin";
    save_noise_path(path, good);
    std::string bytes = slurp(good);

    const fs::path bad_magic = dir / "bad_magic.bin";
    std::string flipped = bytes;
    flipped[0] = 'X';
    write_text_file(flipped, bad_magic);
    CHECK_THROWS(load_noise_path(bad_magic));

    const fs::path truncated = dir / "truncated.bin";
    write_text_file(bytes.substr(0, bytes.size() - 8), truncated);
    CHECK_THROWS(load_noise_path(truncated));

    const fs::path padded = dir / "padded.bin";
    write_text_file(bytes + std::string(1, '\0'), padded);
    CHECK_THROWS(load_noise_path(padded));

    CHECK_THROWS(load_noise_path(dir / "does_not_exist.bin"));
}

TEST_CASE("doubles survive the decimal round trip") {
    for (double v : {0.5, 1.0 / 3.0, -2.7182818284590452, 1e300, 5e-324, 0.0, -0.0, 1e-9}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("config hash is FNV-1a over the canonical dump") {
    const nlohmann::json doc = {{"b", 1}, {"a", {{"y", 2.5}, {"x", "s"}}}};
    // independent FNV-1a 64 over the sorted-key dump
    const std::string dump = doc.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char expect[17];
    std::snprintf(expect, sizeof expect, "%016llx", static_cast<unsigned long long>(h));
    CHECK(config_hash(doc) == expect);
    CHECK(config_hash(doc).size() == 16);

    // key order in the source text cannot matter
    const nlohmann::json reordered = {{"a", {{"x", "s"}, {"y", 2.5}}}, {"b", 1}};
    CHECK(config_hash(reordered) == config_hash(doc));

    nlohmann::json changed = doc;
    changed["b"] = 2;
    CHECK(config_hash(changed) != config_hash(doc));
}

TEST_CASE("field and path tables match golden strings") {
    const Grid g(1, 1.0, 2);
    Field f(g);
    f[0] = 1.5;
    f[1] = -2.0;
    CHECK(field_csv(f, "abc") == "# config_hash=abc\nx,value\n-0.5,1.5\n0.5,-2\n");

    NoisePath path;
    path.seed = 1;
    path.t_min = -0.5;
    path.t_max = 0.5;
    path.dt = 0.5;
    path.m = 1;
    path.increments = {2.0, 3.0};
    CHECK(path_csv(path, "h") == "# config_hash=h\nt,w0\n-0.5,-2\n0,0\n0.5,3\n");
}

TEST_CASE("report tables match golden strings") {
    EnergyReport er;
    er.samples.push_back({1.0, 2.0, 3.0, 1.0});
    CHECK(energy_csv(er, "h") == "# config_hash=h\nt,q,bound,margin\n1,2,3,1\n");

    TailReport tr;
    tr.t_schedule = {1.0};
    tr.r_schedule = {2.0};
    tr.max_tail = {{0.5}};
    CHECK(tail_csv(tr, "h") == "# config_hash=h\nt,r=2\n1,0.5\n");

    AbsorbReport ar;
    ar.members.push_back({5, 10.0, 1.5, 2.5, 25.0, 2.0, true});
    CHECK(absorb_csv(ar, "h") ==
          "# config_hash=h\nseed,factor,r0,radius,init_enorm,final_enorm,entered\n"
          "5,10,1.5,2.5,25,2,1\n");

    PullbackEnsembleReport pr;
    pr.mean_gaps = {0.5, 0.25};
    const std::vector<double> horizons = {1.0, 2.0, 4.0};
    CHECK(pullback_csv(pr, horizons, "h") ==
          "# config_hash=h\nt_from,t_to,mean_gap\n1,2,0.5\n2,4,0.25\n");

    const Grid g(1, 1.0, 2);
    StateCloud cloud;
    State s(g);
    s.u[0] = 1.0;
    s.v[1] = 2.0;
    cloud.states.push_back(s);
    CHECK(cloud_csv(cloud, g, "h") ==
          "# config_hash=h\nstate,x,u,v\n0,-0.5,1,0\n0,0.5,0,2\n");
}

TEST_CASE("lattice families survive the CSV round trip") {
    const LatticeFamily fam = family_truncation(3);
    const fs::path file = scratch_dir() / "trunc.csv";
    write_text_file(lattice_family_csv(fam, "deadbeef"), file);

    const LatticeFamily back = load_lattice_family_csv(file);
    CHECK(back.name == "trunc");
    REQUIRE(back.members.size() == 3);
    REQUIRE(back.limit.entries.size() == fam.limit.entries.size());
    for (std::size_t m = 0; m < 3; ++m) {
        REQUIRE(back.members[m].entries.size() == fam.members[m].entries.size());
        for (std::size_t i = 0; i < back.members[m].entries.size(); ++i) {
            CHECK(back.members[m].entries[i].cell == fam.members[m].entries[i].cell);
            CHECK(back.members[m].entries[i].measure == fam.members[m].entries[i].measure);
            CHECK(back.members[m].entries[i].value == fam.members[m].entries[i].value);
        }
    }
    for (std::size_t i = 0; i < back.limit.entries.size(); ++i) {
        CHECK(back.limit.entries[i].value == fam.limit.entries[i].value);
    }
}

TEST_CASE("lattice CSV loading reports precise errors") {
    const fs::path dir = scratch_dir();

    CHECK_THROWS_AS(load_lattice_family_csv(dir / "missing.csv"), ConfigError);

    const fs::path bad_number = dir / "bad_number.csv";
    write_text_file("member,cell,measure,value\n0,1,oops,2\n", bad_number);
    CHECK_THROWS_AS(load_lattice_family_csv(bad_number), ConfigError);

    const fs::path short_row = dir / "short_row.csv";
    write_text_file("member,cell,measure,value\n0,1,2\n", short_row);
    CHECK_THROWS_AS(load_lattice_family_csv(short_row), ConfigError);

    const fs::path bad_member = dir / "bad_member.csv";
    write_text_file("member,cell,measure,value\n-2,1,1,1\n", bad_member);
    CHECK_THROWS_AS(load_lattice_family_csv(bad_member), ConfigError);

    const fs::path limit_only = dir / "limit_only.csv";
    write_text_file("member,cell,measure,value\n-1,1,1,1\n", limit_only);
    CHECK_THROWS_AS(load_lattice_family_csv(limit_only), ConfigError);

    const fs::path dup_cell = dir / "dup_cell.csv";
    write_text_file("member,cell,measure,value\n0,1,1,1\n0,1,1,2\n", dup_cell);
    CHECK_THROWS_AS(load_lattice_family_csv(dup_cell), ConfigError);

    // header row and comments are optional; bare data parses
    const fs::path bare = dir / "bare.csv";
    write_text_file("# a comment\n0,1,1,0.5\n1,1,1,0.25\n-1,1,1,0\n", bare);
    const LatticeFamily fam = load_lattice_family_csv(bare);
    CHECK(fam.members.size() == 2);
    CHECK(fam.members[0].entries[0].value == 0.5);
    CHECK(fam.limit.entries.size() == 1);
}

TEST_CASE("json files are written sorted with a trailing newline") {
    const fs::path file = scratch_dir() / "nested" / "doc.json";
    const nlohmann::json doc = {{"z", 1}, {"a", true}};
    write_json_file(doc, file);
    CHECK(slurp(file) == doc.dump(2) + "\n");
    CHECK(slurp(file).find("\"a\"") < slurp(file).find("\"z\""));
}
