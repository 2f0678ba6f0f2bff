#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casmc/closure.hpp"
#include "casmc/meanfield.hpp"
#include "casmc/slcs.hpp"
#include "casmc/temporal.hpp"

namespace casmc {

// ---- graph spaces and valuations --------------------------------------
//
// Space file, one statement per line, '#' comments:
//   points N
//   edge i j
//   direction forward|inverse|symmetric     (optional)
//
// Valuation file:
//   atoms p q r                             (optional declarations)
//   point i: p q ...

ClosureSpace parse_space_text(const std::string& text,
                              std::optional<Direction> override_dir = std::nullopt);
ClosureSpace load_space(const std::string& path,
                        std::optional<Direction> override_dir = std::nullopt);

SpatialModel parse_valuation_text(ClosureSpace space, const std::string& text);
SpatialModel load_valuation(ClosureSpace space, const std::string& path);

// ---- snapshot models ---------------------------------------------------
//
// Space block as above, then:
//   kstates N
//   ktrans i j
//   kinit i
//   state i { point j: atoms... }

SnapshotModel parse_snapshot_text(const std::string& text,
                                  std::optional<Direction> override_dir = std::nullopt);
SnapshotModel load_snapshot_model(const std::string& path,
                                  std::optional<Direction> override_dir = std::nullopt);

// ---- population models ---------------------------------------------------
//
//   states a b c
//   init a:0.9 b:0.1
//   rule a -> b : 0.3 * m[b]
//   population N                            (optional)
//
// Unlisted initial states get mass 0; unlisted row mass stays put.

PopulationModel parse_population_text(const std::string& text);
PopulationModel load_population_model(const std::string& path);

// ---- digital images ------------------------------------------------------

enum class PredOp { LT, LE, GE, GT, EQ };
enum class Channel { Red, Green, Blue, Gray };

struct AtomClause {
    Channel channel;
    PredOp op;
    int threshold;
};

struct AtomRule {
    std::string name;
    std::vector<AtomClause> clauses;  // conjunction
};

// Config file: `adjacency 4|8` plus `atom name: channel >= value [, ...]`.
struct ImageSpaceConfig {
    int adjacency = 4;  // orthogonal-4 or full-8
    std::vector<AtomRule> rules;
};

ImageSpaceConfig parse_image_config_text(const std::string& text);
ImageSpaceConfig load_image_config(const std::string& path);

// Binary PGM (P5) or PPM (P6), maxval 255.
struct Image {
    std::uint32_t width = 0, height = 0;
    std::uint32_t channels = 1;  // 1 = grayscale, 3 = rgb
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

Image parse_pnm(const std::vector<std::uint8_t>& bytes, const std::string& what = "<bytes>");
Image load_pnm(const std::string& path);
std::vector<std::uint8_t> encode_ppm(const Image& img);  // always P6
void write_pnm(const Image& img, const std::string& path);

// Spatial model over the pixel grid (row-major point ids, symmetric
// adjacency) plus the base image kept for overlay output.
struct ImageModel {
    SpatialModel model;
    Image base;
};

ImageModel image_to_model(const Image& img, const ImageSpaceConfig& config);
ImageModel load_image(const std::string& path, const ImageSpaceConfig& config);

// Base image with satisfied pixels recolored; bit-exact P6 output.
Image overlay_image(const ImageModel& im, const PointSet& sat, std::array<std::uint8_t, 3> color);
void write_overlay(const ImageModel& im, const PointSet& sat, std::array<std::uint8_t, 3> color,
                   const std::string& path);

}  // namespace casmc
