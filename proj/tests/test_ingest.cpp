#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "casmc/errors.hpp"
#include "casmc/ingest.hpp"
#include "casmc/parse.hpp"
#include "support/gen.hpp"
#include "support/maze.hpp"

using namespace casmc;

#ifndef CASMC_TEST_DATA
#error "CASMC_TEST_DATA must point at tests/data"
#endif

namespace {

const std::string kData = CASMC_TEST_DATA;

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("space loader builds the three-point path") {
    ClosureSpace sp = load_space(kData + "/path3.space");
    CHECK(sp.size() == 3);
    CHECK(sp.direction() == Direction::symmetric);
    PointSet a(3);
    a.add(1);
    CHECK(sp.closure(a).count() == 3);
}

TEST_CASE("cli direction override beats the file") {
    ClosureSpace sp = load_space(kData + "/path3.space", Direction::forward);
    CHECK(sp.direction() == Direction::forward);
}

TEST_CASE("space loader rejects malformed input with line numbers") {
    try {
        parse_space_text("points 2\nedge 0 5\n");
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_space_text("edge 0 1\n"), ModelError);          // no points
    CHECK_THROWS_AS(parse_space_text("points 2\nwat 1\n"), ModelError);   // unknown stmt
    CHECK_THROWS_AS(parse_space_text("points 2\npoints 2\n"), ModelError);
    CHECK_THROWS_AS(parse_space_text("points 2\nedge 0 1\nedge 0 1\n"), ModelError);
    try {
        parse_space_text("points 2\nedge 0 x\n");
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(e.line() == std::optional<std::size_t>(2));
    }
}

TEST_CASE("valuation loader") {
    ClosureSpace sp = load_space(kData + "/path3.space");
    SpatialModel m = load_valuation(std::move(sp), kData + "/path3.val");
    CHECK(m.atoms() == std::vector<std::string>{"p", "q"});
    CHECK(m.atom_set("p").ids() == std::vector<PointId>{0});
    CHECK(m.atom_set("q").empty());

    ClosureSpace sp2 = load_space(kData + "/path3.space");
    CHECK_THROWS_AS(parse_valuation_text(std::move(sp2), "point 9: p\n"), ModelError);
}

TEST_CASE("snapshot loader") {
    SnapshotModel m = load_snapshot_model(kData + "/two_state.snap");
    CHECK(m.state_count() == 2);
    CHECK(m.initial_state() == 0);
    CHECK(m.snapshot(1).atom_set("p").contains(0));
    CHECK_FALSE(m.snapshot(0).atom_set("p").contains(0));

    StLabeling ef = st_sat_set(m, parse_st_formula("EF p"));
    CHECK(ef[0].contains(0));
}

TEST_CASE("snapshot loader rejections") {
    const std::string base = "points 1\nkstates 2\nktrans 0 1\nkinit 0\n";
    CHECK_THROWS_AS(parse_snapshot_text(base), ModelError);  // state 1 is a dead end
    try {
        parse_snapshot_text("points 1\nkstates 2\nktrans 0 1\nktrans 1 0\n");
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("kinit") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_snapshot_text("points 1\nktrans 0 0\nkinit 0\n"), ModelError);
    CHECK_THROWS_AS(
        parse_snapshot_text("points 1\nkstates 1\nktrans 0 0\nkinit 0\nstate 0 {\npoint 0: p\n"),
        ModelError);  // unterminated block
}

TEST_CASE("population loader validates at the initial measure") {
    PopulationModel m = load_population_model(kData + "/sir.pop");
    CHECK(m.states() == std::vector<std::string>{"s", "i", "r"});
    CHECK(m.population() == std::optional<std::uint64_t>(80));
    CHECK_NOTHROW(m.kernel_at(m.initial_measure()));

    CHECK_THROWS_AS(parse_population_text("states a b\ninit a:0.4 b:0.4\n"), ModelError);
    CHECK_THROWS_AS(parse_population_text("states a b\ninit a:1\nrule a -> z : 0.5\n"), ModelError);
    CHECK_THROWS_AS(parse_population_text("states a b\ninit a:1\nrule a -> b : 0.5 +\n"), ModelError);
    CHECK_THROWS_AS(parse_population_text("init a:1\n"), ModelError);
    CHECK_THROWS_AS(parse_population_text("states a b\ninit c:1\n"), ModelError);
}

TEST_CASE("pnm reader on tiny images") {
    // 1x2 grayscale
    std::vector<std::uint8_t> pgm = {'P', '5', '\n', '2', ' ', '1', '\n', '2', '5', '5', '\n', 7, 200};
    Image img = parse_pnm(pgm);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.channels == 1);
    CHECK(img.pixels == std::vector<std::uint8_t>{7, 200});

    ImageSpaceConfig config = parse_image_config_text("adjacency 4\natom bright: gray >= 128\n");
    ImageModel im = image_to_model(img, config);
    CHECK(im.model.space().size() == 2);
    // one symmetric edge pair
    CHECK(im.model.space().successors(0).size() == 1);
    CHECK(im.model.space().successors(1).size() == 1);
    CHECK(im.model.atom_set("bright").ids() == std::vector<PointId>{1});
}

TEST_CASE("adjacency counts in a 3x3 image") {
    Image img;
    img.width = img.height = 3;
    img.channels = 1;
    img.pixels.assign(9, 100);

    ImageModel four = image_to_model(img, parse_image_config_text("adjacency 4\n"));
    CHECK(four.model.space().successors(4).size() == 4);  // center pixel
    ImageModel eight = image_to_model(img, parse_image_config_text("adjacency 8\n"));
    CHECK(eight.model.space().successors(4).size() == 8);
    CHECK(eight.model.space().successors(0).size() == 3);
}

TEST_CASE("pnm reader reports byte offsets on malformed input") {
    auto expect_error = [](std::vector<std::uint8_t> bytes) {
        try {
            parse_pnm(bytes);
            FAIL("expected ModelError");
        } catch (const ModelError& e) {
            CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
        } catch (const DomainError&) {
            FAIL("wrong error type");
        }
    };
    expect_error({'P', '4', '\n'});
    expect_error({'P', '5', '\n', '2', ' ', '1', '\n', '9', '9', '\n', 0, 0});   // maxval 99
    expect_error({'P', '5', '\n', '2', ' ', '1', '\n', '2', '5', '5', '\n', 7});  // truncated
    expect_error({'P', '6', '\n', 'x'});
}

TEST_CASE("fuzzed truncations error out instead of crashing") {
    const std::vector<std::uint8_t> maze = slurp(kData + "/maze.pgm");
    for (std::size_t cut = 0; cut < maze.size(); cut += 7) {
        std::vector<std::uint8_t> prefix(maze.begin(), maze.begin() + cut);
        CHECK_THROWS_AS(parse_pnm(prefix), Error);
    }

    const std::string files[] = {"/path3.space", "/path3.val", "/two_state.snap", "/sir.pop",
                                 "/maze.cfg"};
    for (const auto& f : files) {
        std::vector<std::uint8_t> bytes = slurp(kData + f);
        const std::string text(bytes.begin(), bytes.end());
        for (std::size_t cut = 0; cut + 1 < text.size(); cut += 3) {
            const std::string prefix = text.substr(0, cut);
            try {
                if (f == "/path3.space") parse_space_text(prefix);
                else if (f == "/path3.val")
                    parse_valuation_text(load_space(kData + "/path3.space"), prefix);
                else if (f == "/two_state.snap") parse_snapshot_text(prefix);
                else if (f == "/sir.pop") parse_population_text(prefix);
                else parse_image_config_text(prefix);
            } catch (const Error&) {
                // any located error is acceptable; crashes are not
            }
        }
    }
}

TEST_CASE("image config parsing") {
    ImageSpaceConfig config =
        parse_image_config_text("adjacency 8\natom hot: r >= 200, b < 40\natom cold: b >= 200\n");
    CHECK(config.adjacency == 8);
    REQUIRE(config.rules.size() == 2);
    CHECK(config.rules[0].clauses.size() == 2);
    CHECK_THROWS_AS(parse_image_config_text("adjacency 5\n"), ModelError);
    CHECK_THROWS_AS(parse_image_config_text("atom a: gray < 300\n"), ModelError);
    CHECK_THROWS_AS(parse_image_config_text("atom a: teal < 30\n"), ModelError);
    CHECK_THROWS_AS(parse_image_config_text("atom a: gray ~ 30\n"), ModelError);
    CHECK_THROWS_AS(parse_image_config_text("atom a b: gray < 30\n"), ModelError);
}

TEST_CASE("gray channel requires a grayscale image") {
    Image rgb;
    rgb.width = rgb.height = 1;
    rgb.channels = 3;
    rgb.pixels = {1, 2, 3};
    CHECK_THROWS_AS(image_to_model(rgb, parse_image_config_text("atom a: gray < 30\n")), ModelError);
    CHECK_NOTHROW(image_to_model(rgb, parse_image_config_text("atom a: b >= 2\n")));
}

TEST_CASE("overlay with empty sat reproduces the pixel data") {
    const Image maze = load_pnm(kData + "/maze.pgm");
    ImageModel im = image_to_model(maze, gen::maze_config());
    Image out = overlay_image(im, PointSet(maze.pixel_count()), {255, 0, 0});
    REQUIRE(out.channels == 3);
    for (std::size_t p = 0; p < maze.pixel_count(); ++p) {
        CHECK(out.pixels[p * 3] == maze.pixels[p]);
        CHECK(out.pixels[p * 3 + 1] == maze.pixels[p]);
        CHECK(out.pixels[p * 3 + 2] == maze.pixels[p]);
    }

    Image full = overlay_image(im, PointSet::full(maze.pixel_count()), {9, 8, 7});
    for (std::size_t p = 0; p < maze.pixel_count(); ++p) {
        CHECK(full.pixels[p * 3] == 9);
        CHECK(full.pixels[p * 3 + 1] == 8);
        CHECK(full.pixels[p * 3 + 2] == 7);
    }
}

TEST_CASE("committed maze matches the deterministic generator") {
    const Image committed = load_pnm(kData + "/maze.pgm");
    const Image generated = gen::make_maze32();
    CHECK(committed.pixels == generated.pixels);

    // wall atom iff gray < 128, exactly the generator's wall mask
    ImageModel im = image_to_model(committed, gen::maze_config());
    const PointSet& walls = im.model.atom_set("wall");
    for (std::size_t p = 0; p < committed.pixel_count(); ++p)
        CHECK(walls.contains(static_cast<PointId>(p)) == (committed.pixels[p] < 128));
}

TEST_CASE("maze reachability equals the BFS oracle and the golden overlay") {
    const Image maze = load_pnm(kData + "/maze.pgm");
    ImageModel im = image_to_model(maze, gen::maze_config());

    PointSet sat = sat_set(im.model, parse_spatial_formula("reach(corridor, exit)"));
    PointSet oracle = gen::maze_reach_oracle(maze);
    CHECK(sat == oracle);
    CHECK(sat.count() < im.model.atom_set("corridor").count());  // the pocket stays dark

    const std::vector<std::uint8_t> golden = slurp(kData + "/maze_overlay_golden.ppm");
    CHECK(encode_ppm(overlay_image(im, sat, {255, 0, 0})) == golden);
}

TEST_CASE("somewhere/everywhere behave on the maze") {
    const Image maze = load_pnm(kData + "/maze.pgm");
    ImageModel im = image_to_model(maze, gen::maze_config());
    PointSet somewhere_exit = sat_set(im.model, parse_spatial_formula("somewhere exit"));
    PointSet reach_exit = sat_set(im.model, parse_spatial_formula("reach(corridor | wall, exit)"));
    CHECK(reach_exit.is_subset_of(somewhere_exit));
}
