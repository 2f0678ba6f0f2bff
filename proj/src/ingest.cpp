#include "casmc/ingest.hpp"

#include <fstream>
#include <sstream>

#include "casmc/errors.hpp"
#include "casmc/parse.hpp"

namespace casmc {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Line-oriented reader: strips '#' comments and blank lines, keeps
// 1-based line numbers for diagnostics.
struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    std::optional<std::pair<std::size_t, std::string>> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = line.find_last_not_of(" \t\r");
            return std::make_pair(line_no, line.substr(a, b - a + 1));
        }
        return std::nullopt;
    }
};

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::uint64_t parse_uint(const std::string& w, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(w, &used);
        if (used != w.size() || v < 0) throw std::invalid_argument(w);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ModelError(std::string("expected non-negative integer for ") + what + ", got '" + w + "'",
                         line);
    }
}

double parse_double(const std::string& w, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return v;
    } catch (const std::exception&) {
        throw ModelError(std::string("expected number for ") + what + ", got '" + w + "'", line);
    }
}

struct SpaceDecl {
    std::optional<std::size_t> points;
    std::vector<std::pair<PointId, PointId>> edges;
    std::optional<Direction> direction;

    // Consumes `points`/`edge`/`direction` statements; returns false for
    // anything else so composite formats can take over.
    bool consume(const std::vector<std::string>& words, std::size_t line) {
        if (words[0] == "points") {
            if (words.size() != 2) throw ModelError("usage: points N", line);
            if (points) throw ModelError("duplicate points statement", line);
            points = static_cast<std::size_t>(parse_uint(words[1], line, "points"));
            return true;
        }
        if (words[0] == "edge") {
            if (words.size() != 3) throw ModelError("usage: edge i j", line);
            edges.emplace_back(static_cast<PointId>(parse_uint(words[1], line, "edge source")),
                               static_cast<PointId>(parse_uint(words[2], line, "edge target")));
            return true;
        }
        if (words[0] == "direction") {
            if (words.size() != 2) throw ModelError("usage: direction forward|inverse|symmetric", line);
            try {
                direction = direction_from_string(words[1]);
            } catch (const ModelError& e) {
                throw ModelError(e.what(), line);
            }
            return true;
        }
        return false;
    }

    ClosureSpace build(std::optional<Direction> override_dir) const {
        if (!points) throw ModelError("missing 'points N' statement");
        SpaceRelation rel{*points, edges};
        return ClosureSpace::from_relation(rel,
                                           override_dir.value_or(direction.value_or(Direction::forward)));
    }
};

// `point i: a b ...`; returns (point, atoms). The words vector holds the
// already-split line with words[0] == "point".
std::pair<PointId, std::vector<std::string>> parse_point_line(const std::vector<std::string>& words,
                                                              std::size_t line) {
    if (words.size() < 2) throw ModelError("usage: point i: atom ...", line);
    std::string id_word = words[1];
    bool colon_seen = false;
    if (!id_word.empty() && id_word.back() == ':') {
        id_word.pop_back();
        colon_seen = true;
    }
    const PointId p = static_cast<PointId>(parse_uint(id_word, line, "point id"));
    std::vector<std::string> atoms;
    for (std::size_t i = 2; i < words.size(); ++i) {
        std::string w = words[i];
        if (!colon_seen) {
            if (w == ":") {
                colon_seen = true;
                continue;
            }
            if (w.front() == ':') {
                w.erase(0, 1);
                colon_seen = true;
            } else {
                throw ModelError("expected ':' after point id", line);
            }
        }
        if (!w.empty()) atoms.push_back(w);
    }
    if (!colon_seen) throw ModelError("expected ':' after point id", line);
    return {p, std::move(atoms)};
}

void note_atom(std::vector<std::string>& order, const std::string& name) {
    for (const auto& a : order)
        if (a == name) return;
    order.push_back(name);
}

}  // namespace

ClosureSpace parse_space_text(const std::string& text, std::optional<Direction> override_dir) {
    SpaceDecl decl;
    LineReader reader(text);
    while (auto entry = reader.next()) {
        auto& [line, content] = *entry;
        const auto words = split_words(content);
        if (!decl.consume(words, line))
            throw ModelError("unknown statement '" + words[0] + "'", line);
    }
    return decl.build(override_dir);
}

ClosureSpace load_space(const std::string& path, std::optional<Direction> override_dir) {
    return parse_space_text(read_file(path), override_dir);
}

SpatialModel parse_valuation_text(ClosureSpace space, const std::string& text) {
    std::vector<std::string> atom_order;
    std::vector<std::pair<PointId, std::string>> assignments;

    LineReader reader(text);
    while (auto entry = reader.next()) {
        auto& [line, content] = *entry;
        const auto words = split_words(content);
        if (words[0] == "atoms") {
            for (std::size_t i = 1; i < words.size(); ++i) note_atom(atom_order, words[i]);
        } else if (words[0] == "point") {
            auto [p, atoms] = parse_point_line(words, line);
            if (p >= space.size())
                throw ModelError("point " + std::to_string(p) + " outside carrier of size " +
                                 std::to_string(space.size()), line);
            for (const auto& a : atoms) {
                note_atom(atom_order, a);
                assignments.emplace_back(p, a);
            }
        } else {
            throw ModelError("unknown statement '" + words[0] + "'", line);
        }
    }

    SpatialModel model(std::move(space), std::move(atom_order));
    for (const auto& [p, a] : assignments) model.assign(p, a);
    return model;
}

SpatialModel load_valuation(ClosureSpace space, const std::string& path) {
    return parse_valuation_text(std::move(space), read_file(path));
}

SnapshotModel parse_snapshot_text(const std::string& text, std::optional<Direction> override_dir) {
    SpaceDecl space_decl;
    std::optional<std::size_t> kstates;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ktrans;
    std::optional<std::uint32_t> kinit;
    std::vector<std::string> atom_order;
    // (state, point, atom)
    std::vector<std::tuple<std::uint32_t, PointId, std::string>> assignments;
    std::optional<std::uint32_t> open_state;

    LineReader reader(text);
    while (auto entry = reader.next()) {
        auto& [line, content] = *entry;
        auto words = split_words(content);

        if (open_state) {
            if (words[0] == "}") {
                if (words.size() != 1) throw ModelError("unexpected input after '}'", line);
                open_state.reset();
                continue;
            }
            if (words[0] != "point")
                throw ModelError("expected 'point i: atoms...' or '}' inside state block", line);
            auto [p, atoms] = parse_point_line(words, line);
            for (const auto& a : atoms) {
                note_atom(atom_order, a);
                assignments.emplace_back(*open_state, p, a);
            }
            continue;
        }

        if (space_decl.consume(words, line)) continue;
        if (words[0] == "kstates") {
            if (words.size() != 2) throw ModelError("usage: kstates N", line);
            kstates = static_cast<std::size_t>(parse_uint(words[1], line, "kstates"));
            continue;
        }
        if (words[0] == "ktrans") {
            if (words.size() != 3) throw ModelError("usage: ktrans i j", line);
            ktrans.emplace_back(static_cast<std::uint32_t>(parse_uint(words[1], line, "ktrans source")),
                                static_cast<std::uint32_t>(parse_uint(words[2], line, "ktrans target")));
            continue;
        }
        if (words[0] == "kinit") {
            if (words.size() != 2) throw ModelError("usage: kinit i", line);
            kinit = static_cast<std::uint32_t>(parse_uint(words[1], line, "kinit"));
            continue;
        }
        if (words[0] == "state") {
            if (words.size() != 3 || words[2] != "{")
                throw ModelError("usage: state i { ... }", line);
            open_state = static_cast<std::uint32_t>(parse_uint(words[1], line, "state id"));
            continue;
        }
        if (words[0] == "atoms") {
            for (std::size_t i = 1; i < words.size(); ++i) note_atom(atom_order, words[i]);
            continue;
        }
        throw ModelError("unknown statement '" + words[0] + "'", line);
    }
    if (open_state) throw ModelError("unterminated state block (missing '}')");
    if (!kstates) throw ModelError("missing 'kstates N' statement");
    if (!kinit) throw ModelError("missing 'kinit i' statement");

    ClosureSpace space = space_decl.build(override_dir);
    const std::size_t point_count = space.size();
    SnapshotModel model(std::move(space), atom_order, *kstates, ktrans, *kinit);
    for (const auto& [s, p, a] : assignments) {
        if (s >= *kstates)
            throw ModelError("state block id " + std::to_string(s) + " outside kstates");
        if (p >= point_count)
            throw ModelError("point " + std::to_string(p) + " outside carrier of size " +
                             std::to_string(point_count));
        model.assign(s, p, a);
    }
    return model;
}

SnapshotModel load_snapshot_model(const std::string& path, std::optional<Direction> override_dir) {
    return parse_snapshot_text(read_file(path), override_dir);
}

PopulationModel parse_population_text(const std::string& text) {
    std::vector<std::string> states;
    std::vector<std::pair<std::string, double>> init;
    std::vector<TransitionRule> rules;
    std::optional<std::uint64_t> population;

    LineReader reader(text);
    while (auto entry = reader.next()) {
        auto& [line, content] = *entry;
        const auto words = split_words(content);
        if (words[0] == "states") {
            if (words.size() < 2) throw ModelError("usage: states a b ...", line);
            if (!states.empty()) throw ModelError("duplicate states statement", line);
            states.assign(words.begin() + 1, words.end());
            continue;
        }
        if (words[0] == "init") {
            for (std::size_t i = 1; i < words.size(); ++i) {
                const auto& w = words[i];
                const auto colon = w.find(':');
                if (colon == std::string::npos || colon == 0 || colon + 1 >= w.size())
                    throw ModelError("usage: init state:fraction ...", line);
                init.emplace_back(w.substr(0, colon),
                                  parse_double(w.substr(colon + 1), line, "initial fraction"));
            }
            continue;
        }
        if (words[0] == "rule") {
            // rule FROM -> TO : EXPR
            const auto arrow = content.find("->");
            const auto colon = content.find(':', arrow == std::string::npos ? 0 : arrow);
            if (arrow == std::string::npos || colon == std::string::npos)
                throw ModelError("usage: rule from -> to : expression", line);
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t");
                const auto b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string from = trim(content.substr(4, arrow - 4));
            const std::string to = trim(content.substr(arrow + 2, colon - arrow - 2));
            const std::string expr_text = trim(content.substr(colon + 1));
            if (from.empty() || to.empty() || expr_text.empty())
                throw ModelError("usage: rule from -> to : expression", line);
            try {
                rules.push_back({from, to, parse_kernel_expr(expr_text)});
            } catch (const ParseError& e) {
                throw ModelError(std::string("bad rule expression: ") + e.what(), line);
            }
            continue;
        }
        if (words[0] == "population") {
            if (words.size() != 2) throw ModelError("usage: population N", line);
            population = parse_uint(words[1], line, "population");
            continue;
        }
        throw ModelError("unknown statement '" + words[0] + "'", line);
    }

    if (states.empty()) throw ModelError("missing 'states' statement");
    OccupancyMeasure m0(states.size(), 0.0);
    for (const auto& [name, frac] : init) {
        bool found = false;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (states[i] == name) {
                m0[i] = frac;
                found = true;
                break;
            }
        }
        if (!found) throw ModelError("init references undeclared state '" + name + "'");
    }
    return PopulationModel(states, m0, rules, population);
}

PopulationModel load_population_model(const std::string& path) {
    return parse_population_text(read_file(path));
}

ImageSpaceConfig parse_image_config_text(const std::string& text) {
    ImageSpaceConfig config;
    LineReader reader(text);
    while (auto entry = reader.next()) {
        auto& [line, content] = *entry;
        const auto words = split_words(content);
        if (words[0] == "adjacency") {
            if (words.size() != 2 || (words[1] != "4" && words[1] != "8"))
                throw ModelError("usage: adjacency 4|8", line);
            config.adjacency = words[1] == "4" ? 4 : 8;
            continue;
        }
        if (words[0] == "atom") {
            // atom NAME: clause [, clause ...]
            const auto colon = content.find(':');
            if (colon == std::string::npos) throw ModelError("usage: atom name: channel op value", line);
            std::istringstream head(content.substr(4, colon - 4));
            std::string name;
            head >> name;
            std::string rest;
            if (head >> rest) throw ModelError("atom name must be a single word", line);
            if (name.empty()) throw ModelError("missing atom name", line);
            for (const auto& rule : config.rules)
                if (rule.name == name) throw ModelError("atom '" + name + "' defined twice", line);

            AtomRule rule{name, {}};
            std::string clauses = content.substr(colon + 1);
            std::size_t pos = 0;
            while (pos <= clauses.size()) {
                const auto comma = clauses.find(',', pos);
                std::string clause = clauses.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                    : comma - pos);
                std::istringstream cs(clause);
                std::string ch, op, value;
                if (!(cs >> ch >> op >> value) || (cs >> std::ws, !cs.eof()))
                    throw ModelError("usage: channel op value (got '" + clause + "')", line);
                AtomClause parsed{};
                if (ch == "r" || ch == "red") parsed.channel = Channel::Red;
                else if (ch == "g" || ch == "green") parsed.channel = Channel::Green;
                else if (ch == "b" || ch == "blue") parsed.channel = Channel::Blue;
                else if (ch == "gray" || ch == "grey") parsed.channel = Channel::Gray;
                else throw ModelError("unknown channel '" + ch + "'", line);
                if (op == "<") parsed.op = PredOp::LT;
                else if (op == "<=") parsed.op = PredOp::LE;
                else if (op == ">=") parsed.op = PredOp::GE;
                else if (op == ">") parsed.op = PredOp::GT;
                else if (op == "=" || op == "==") parsed.op = PredOp::EQ;
                else throw ModelError("unknown comparison '" + op + "'", line);
                const double v = parse_double(value, line, "threshold");
                if (v < 0 || v > 255 || v != static_cast<int>(v))
                    throw ModelError("threshold must be an integer in [0,255]", line);
                parsed.threshold = static_cast<int>(v);
                rule.clauses.push_back(parsed);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (rule.clauses.empty()) throw ModelError("atom rule has no clauses", line);
            config.rules.push_back(std::move(rule));
            continue;
        }
        throw ModelError("unknown statement '" + words[0] + "'", line);
    }
    return config;
}

ImageSpaceConfig load_image_config(const std::string& path) {
    return parse_image_config_text(read_file(path));
}

}  // namespace casmc
