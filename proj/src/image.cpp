#include <fstream>

#include "casmc/errors.hpp"
#include "casmc/ingest.hpp"

namespace casmc {

namespace {

[[noreturn]] void format_error(const std::string& what, std::size_t offset, const std::string& where) {
    throw ModelError(where + ": " + what + " (byte offset " + std::to_string(offset) + ")");
}

struct ByteCursor {
    const std::vector<std::uint8_t>& bytes;
    const std::string& where;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    std::uint8_t at() const { return bytes[pos]; }

    // PNM token separators: whitespace plus '#' comments to end of line.
    void skip_separators() {
        while (!eof()) {
            const std::uint8_t c = at();
            if (c == '#') {
                while (!eof() && at() != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::uint32_t read_uint(const char* what) {
        skip_separators();
        if (eof()) format_error(std::string("missing ") + what, pos, where);
        if (at() < '0' || at() > '9')
            format_error(std::string("expected digit for ") + what, pos, where);
        std::uint64_t v = 0;
        while (!eof() && at() >= '0' && at() <= '9') {
            v = v * 10 + (at() - '0');
            if (v > 0xffffffffULL) format_error(std::string(what) + " out of range", pos, where);
            ++pos;
        }
        return static_cast<std::uint32_t>(v);
    }
};

bool pixel_matches(const AtomClause& clause, const std::uint8_t* px, std::uint32_t channels,
                   bool grayscale) {
    int value;
    switch (clause.channel) {
        case Channel::Gray:
            if (!grayscale)
                throw ModelError("channel 'gray' requires a grayscale (PGM) image");
            value = px[0];
            break;
        case Channel::Red: value = px[0]; break;
        case Channel::Green: value = channels == 3 ? px[1] : px[0]; break;
        case Channel::Blue: value = channels == 3 ? px[2] : px[0]; break;
        default: throw InternalError("unknown channel");
    }
    switch (clause.op) {
        case PredOp::LT: return value < clause.threshold;
        case PredOp::LE: return value <= clause.threshold;
        case PredOp::GE: return value >= clause.threshold;
        case PredOp::GT: return value > clause.threshold;
        case PredOp::EQ: return value == clause.threshold;
    }
    throw InternalError("unknown predicate op");
}

}  // namespace

Image parse_pnm(const std::vector<std::uint8_t>& bytes, const std::string& what) {
    ByteCursor cur{bytes, what};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        format_error("not a binary PGM (P5) or PPM (P6) file", 0, what);
    const bool color = bytes[1] == '6';
    cur.pos = 2;

    Image img;
    img.channels = color ? 3 : 1;
    img.width = cur.read_uint("width");
    img.height = cur.read_uint("height");
    const std::uint32_t maxval = cur.read_uint("maxval");
    if (maxval != 255) format_error("unsupported maxval " + std::to_string(maxval), cur.pos, what);
    if (img.width == 0 || img.height == 0) format_error("empty image", cur.pos, what);

    // Exactly one whitespace byte separates the header from the payload.
    if (cur.eof() || (cur.at() != ' ' && cur.at() != '\t' && cur.at() != '\r' && cur.at() != '\n'))
        format_error("missing whitespace before pixel data", cur.pos, what);
    ++cur.pos;

    const std::size_t need = img.pixel_count() * img.channels;
    if (bytes.size() - cur.pos < need)
        format_error("truncated pixel data: need " + std::to_string(need) + " bytes, have " +
                     std::to_string(bytes.size() - cur.pos), cur.pos, what);
    img.pixels.assign(bytes.begin() + cur.pos, bytes.begin() + cur.pos + need);
    return img;
}

Image load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_pnm(bytes, path);
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
    std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.pixel_count() * 3);
    if (img.channels == 3) {
        out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    } else {
        for (std::uint8_t v : img.pixels) {
            out.push_back(v);
            out.push_back(v);
            out.push_back(v);
        }
    }
    return out;
}

void write_pnm(const Image& img, const std::string& path) {
    const std::vector<std::uint8_t> bytes = encode_ppm(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

ImageModel image_to_model(const Image& img, const ImageSpaceConfig& config) {
    const std::uint32_t w = img.width, h = img.height;
    SpaceRelation rel;
    rel.point_count = img.pixel_count();
    auto id = [w](std::uint32_t x, std::uint32_t y) { return static_cast<PointId>(y * w + x); };

    // One pair per undirected adjacency; the symmetric closure direction
    // adds the reverse steps.
    for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = 0; x < w; ++x) {
            if (x + 1 < w) rel.edges.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < h) rel.edges.emplace_back(id(x, y), id(x, y + 1));
            if (config.adjacency == 8 && y + 1 < h) {
                if (x + 1 < w) rel.edges.emplace_back(id(x, y), id(x + 1, y + 1));
                if (x > 0) rel.edges.emplace_back(id(x, y), id(x - 1, y + 1));
            }
        }
    }
    ClosureSpace space = ClosureSpace::from_relation(rel, Direction::symmetric);

    std::vector<std::string> atoms;
    atoms.reserve(config.rules.size());
    for (const auto& rule : config.rules) atoms.push_back(rule.name);

    SpatialModel model(std::move(space), std::move(atoms));
    const bool grayscale = img.channels == 1;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        const std::uint8_t* px = img.pixels.data() + p * img.channels;
        for (std::size_t r = 0; r < config.rules.size(); ++r) {
            bool all = true;
            for (const auto& clause : config.rules[r].clauses) {
                if (!pixel_matches(clause, px, img.channels, grayscale)) {
                    all = false;
                    break;
                }
            }
            if (all) model.assign(static_cast<PointId>(p), r);
        }
    }
    return ImageModel{std::move(model), img};
}

ImageModel load_image(const std::string& path, const ImageSpaceConfig& config) {
    return image_to_model(load_pnm(path), config);
}

Image overlay_image(const ImageModel& im, const PointSet& sat, std::array<std::uint8_t, 3> color) {
    if (im.base.pixel_count() != im.model.space().size() || sat.universe() != im.model.space().size())
        throw ModelError("overlay requires an image-based model and a matching satisfaction set");
    Image out;
    out.width = im.base.width;
    out.height = im.base.height;
    out.channels = 3;
    out.pixels.resize(im.base.pixel_count() * 3);
    for (std::size_t p = 0; p < im.base.pixel_count(); ++p) {
        std::uint8_t* dst = out.pixels.data() + p * 3;
        if (sat.contains(static_cast<PointId>(p))) {
            dst[0] = color[0];
            dst[1] = color[1];
            dst[2] = color[2];
        } else if (im.base.channels == 3) {
            const std::uint8_t* src = im.base.pixels.data() + p * 3;
            dst[0] = src[0];
            dst[1] = src[1];
            dst[2] = src[2];
        } else {
            const std::uint8_t v = im.base.pixels[p];
            dst[0] = dst[1] = dst[2] = v;
        }
    }
    return out;
}

void write_overlay(const ImageModel& im, const PointSet& sat, std::array<std::uint8_t, 3> color,
                   const std::string& path) {
    write_pnm(overlay_image(im, sat, color), path);
}

}  // namespace casmc
