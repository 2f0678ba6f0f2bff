// casmc: spatial / spatio-temporal / mean-field model checking CLI.
//
// Exit codes: 0 = ran, 1 = usage or formula syntax, 2 = input error,
// 3 = internal invariant failure.

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "casmc/errors.hpp"
#include "casmc/ingest.hpp"
#include "casmc/meanfield.hpp"
#include "casmc/parse.hpp"
#include "casmc/slcs.hpp"
#include "casmc/temporal.hpp"

using json = nlohmann::ordered_json;
using namespace casmc;

namespace {

std::string num_str(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

struct Report {
    json j;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        j["tool"] = "casmc";
        j["command"] = command;
        j["inputs"] = json::object();
        j["results"] = json::object();
        j["artifacts"] = json::array();
    }

    // The timing section is the only non-deterministic part of the
    // report; golden tests drop it before comparing.
    void emit() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        j["timing"] = json{{"total_ms", ms}};
        std::cout << "===REPORT===\n" << j.dump() << "\n";
    }
};

struct FormulaSource {
    std::string inline_text;
    std::string file;

    std::string resolve() const {
        if (!inline_text.empty()) return inline_text;
        std::ifstream in(file, std::ios::binary);
        if (!in) throw ModelError("cannot open formula file '" + file + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return text;
    }
};

void add_formula_options(CLI::App* cmd, FormulaSource& src) {
    auto* a = cmd->add_option("--formula", src.inline_text, "Formula text");
    auto* b = cmd->add_option("--formula-file", src.file, "File containing the formula");
    a->excludes(b);
    cmd->final_callback([&src, cmd]() {
        if (src.inline_text.empty() && src.file.empty())
            throw CLI::RequiredError(cmd->get_name() + " needs --formula or --formula-file");
    });
}

std::optional<Direction> parse_direction_flag(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return direction_from_string(s);
}

std::array<std::uint8_t, 3> parse_color(const std::string& s) {
    std::array<std::uint8_t, 3> color{};
    int r, g, b;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> r >> c1 >> g >> c2 >> b) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof() ||
        r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
        throw CLI::ValidationError("--color expects R,G,B with components in [0,255]");
    color = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
             static_cast<std::uint8_t>(b)};
    return color;
}

json ids_json(const PointSet& s) {
    json out = json::array();
    s.for_each([&](PointId p) { out.push_back(p); });
    return out;
}

void print_points(const PointSet& s) {
    std::cout << "satisfying points (" << s.count() << " of " << s.universe() << "):";
    s.for_each([&](PointId p) { std::cout << ' ' << p; });
    std::cout << "\n";
}

// ---- spatial ----------------------------------------------------------

struct SpatialArgs {
    std::string space_file, image_file, config_file, valuation_file, direction, overlay_path;
    std::string color = "255,0,0";
    FormulaSource formula;
    bool oracle = false;
};

int run_spatial(const SpatialArgs& args) {
    Report report("spatial");
    FormulaPtr f = parse_spatial_formula(args.formula.resolve());
    report.j["inputs"]["formula"] = to_string(f);
    report.j["inputs"]["oracle"] = args.oracle;

    EvalOptions opts;
    opts.oracle_surrounded = args.oracle;

    std::optional<ImageModel> image_model;
    std::optional<SpatialModel> graph_model;
    if (!args.image_file.empty()) {
        ImageSpaceConfig config =
            args.config_file.empty() ? ImageSpaceConfig{} : load_image_config(args.config_file);
        image_model = load_image(args.image_file, config);
        report.j["inputs"]["image"] = args.image_file;
        report.j["inputs"]["adjacency"] = config.adjacency;
    } else {
        ClosureSpace space = load_space(args.space_file, parse_direction_flag(args.direction));
        report.j["inputs"]["space"] = args.space_file;
        report.j["inputs"]["direction"] = to_string(space.direction());
        if (!args.valuation_file.empty()) {
            graph_model = load_valuation(std::move(space), args.valuation_file);
        } else {
            graph_model = SpatialModel(std::move(space), {});
        }
    }

    const SpatialModel& model = image_model ? image_model->model : *graph_model;
    PointSet sat = sat_set(model, f, opts);
    print_points(sat);
    report.j["results"]["count"] = sat.count();
    report.j["results"]["points"] = ids_json(sat);

    if (!args.overlay_path.empty()) {
        if (!image_model) throw ModelError("--overlay requires an image-based model");
        write_overlay(*image_model, sat, parse_color(args.color), args.overlay_path);
        std::cout << "overlay written to " << args.overlay_path << "\n";
        report.j["artifacts"].push_back(args.overlay_path);
    }
    report.emit();
    return 0;
}

// ---- spatio-temporal ----------------------------------------------------

struct StArgs {
    std::string model_file, direction;
    FormulaSource formula;
    bool oracle = false;
    bool all_states = false;
};

int run_st(const StArgs& args) {
    Report report("st");
    FormulaPtr f = parse_st_formula(args.formula.resolve());
    report.j["inputs"]["model"] = args.model_file;
    report.j["inputs"]["formula"] = to_string(f);
    report.j["inputs"]["oracle"] = args.oracle;

    SnapshotModel model = load_snapshot_model(args.model_file, parse_direction_flag(args.direction));
    EvalOptions opts;
    opts.oracle_surrounded = args.oracle;
    StLabeling labeling = st_sat_set(model, f, opts);

    const std::uint32_t init = model.initial_state();
    std::cout << "at initial kripke state " << init << ":\n";
    print_points(labeling[init]);
    report.j["results"]["initial_state"] = init;
    report.j["results"]["count"] = labeling[init].count();
    report.j["results"]["points"] = ids_json(labeling[init]);
    if (args.all_states) {
        json per_state = json::object();
        for (std::uint32_t s = 0; s < model.state_count(); ++s)
            per_state[std::to_string(s)] = ids_json(labeling[s]);
        report.j["results"]["states"] = per_state;
    }
    report.emit();
    return 0;
}

// ---- mean field ---------------------------------------------------------

struct MfArgs {
    std::string model_file, start_state, out_path;
    FormulaSource formula;
    std::size_t horizon = 30;
    std::size_t tagged = 1;
    std::uint64_t seed = 0;
    std::uint64_t population = 0;
    bool oracle = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write '" + path + "'");
    out << text;
}

std::string measures_csv(const std::vector<std::string>& states,
                         const std::vector<OccupancyMeasure>& rows) {
    std::string csv = "t";
    for (const auto& s : states) csv += "," + s;
    csv += "\n";
    for (std::size_t t = 0; t < rows.size(); ++t) {
        csv += std::to_string(t);
        for (double v : rows[t]) csv += "," + num_str(v);
        csv += "\n";
    }
    return csv;
}

int emit_csv(Report& report, const std::string& out_path, const std::string& csv) {
    if (!out_path.empty()) {
        write_text(out_path, csv);
        std::cout << "csv written to " << out_path << "\n";
        report.j["artifacts"].push_back(out_path);
    } else {
        std::cout << csv;
    }
    report.emit();
    return 0;
}

int run_mf_trace(const MfArgs& args) {
    Report report("mf trace");
    PopulationModel model = load_population_model(args.model_file);
    report.j["inputs"]["model"] = args.model_file;
    report.j["inputs"]["horizon"] = args.horizon;

    auto traj = mf_trajectory(model, args.horizon);
    json final_row = json::object();
    for (std::size_t s = 0; s < model.state_count(); ++s)
        final_row[model.states()[s]] = traj.back()[s];
    report.j["results"]["final"] = final_row;
    return emit_csv(report, args.out_path, measures_csv(model.states(), traj));
}

int run_mf_exact(const MfArgs& args) {
    Report report("mf exact");
    PopulationModel model = load_population_model(args.model_file);
    std::uint64_t N = args.population != 0 ? args.population : model.population().value_or(0);
    if (N == 0) throw ModelError("population size required: pass --N or set it in the model file");
    report.j["inputs"]["model"] = args.model_file;
    report.j["inputs"]["N"] = N;
    report.j["inputs"]["horizon"] = args.horizon;

    auto expected = exact_count_dtmc(model, static_cast<std::size_t>(N), args.horizon);
    json final_row = json::object();
    for (std::size_t s = 0; s < model.state_count(); ++s)
        final_row[model.states()[s]] = expected.back()[s];
    report.j["results"]["final"] = final_row;
    return emit_csv(report, args.out_path, measures_csv(model.states(), expected));
}

int run_mf_check(const MfArgs& args) {
    Report report("mf check");
    PopulationModel model = load_population_model(args.model_file);
    PctlFormulaPtr f = parse_pctl_formula(args.formula.resolve());
    std::string start = args.start_state;
    if (start.empty()) {
        for (std::size_t s = 0; s < model.state_count(); ++s)
            if (model.initial_measure()[s] > 0.0) {
                start = model.states()[s];
                break;
            }
    }
    report.j["inputs"]["model"] = args.model_file;
    report.j["inputs"]["formula"] = to_string(*f);
    report.j["inputs"]["start"] = start;
    report.j["inputs"]["oracle"] = args.oracle;

    CheckResult res = args.oracle ? pctl_check_naive(model, start, f) : pctl_check(model, start, f);
    std::cout << "verdict: " << (res.verdict ? "true" : "false") << "\n";
    report.j["results"]["verdict"] = res.verdict;
    if (res.probability) {
        std::cout << "probability: " << num_str(*res.probability) << "\n";
        report.j["results"]["probability"] = *res.probability;
    } else {
        report.j["results"]["probability"] = nullptr;
    }
    std::cout << "audit: nodes_expanded=" << res.audit.nodes_expanded
              << " max_successors=" << res.audit.max_successors_per_node
              << " memo_entries=" << res.audit.memo_entries << " horizon=" << res.audit.horizon
              << " prob_subformulas=" << res.audit.prob_subformulas << "\n";
    report.j["audit"] = json{{"nodes_expanded", res.audit.nodes_expanded},
                             {"max_successors_per_node", res.audit.max_successors_per_node},
                             {"memo_entries", res.audit.memo_entries},
                             {"horizon", res.audit.horizon},
                             {"prob_subformulas", res.audit.prob_subformulas}};
    report.emit();
    return 0;
}

int run_mf_simulate(const MfArgs& args) {
    Report report("mf simulate");
    PopulationModel model = load_population_model(args.model_file);
    report.j["inputs"]["model"] = args.model_file;
    report.j["inputs"]["tagged"] = args.tagged;
    report.j["inputs"]["horizon"] = args.horizon;

    SimulationResult res = fast_simulate(model, args.tagged, args.horizon, args.seed,
                                         args.start_state);
    report.j["rng"] = json{{"id", res.rng_id}, {"seed", res.seed}};

    std::string csv = "object,t,state\n";
    for (std::size_t obj = 0; obj < res.traces.size(); ++obj)
        for (std::size_t t = 0; t < res.traces[obj].size(); ++t)
            csv += std::to_string(obj) + "," + std::to_string(t) + "," +
                   model.states()[res.traces[obj][t]] + "\n";
    return emit_csv(report, args.out_path, csv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial and mean-field model checking for collective adaptive systems"};
    app.require_subcommand(1);

    SpatialArgs spatial;
    auto* sp = app.add_subcommand("spatial", "Check an SLCS formula on a graph space or image");
    auto* sp_space = sp->add_option("--space", spatial.space_file, "Graph space file");
    auto* sp_image = sp->add_option("--image", spatial.image_file, "PGM/PPM image file");
    sp_space->excludes(sp_image);
    sp->add_option("--config", spatial.config_file, "Image atom/adjacency config")->needs(sp_image);
    sp->add_option("--valuation", spatial.valuation_file, "Valuation file")->needs(sp_space);
    sp->add_option("--direction", spatial.direction, "forward|inverse|symmetric")->needs(sp_space);
    sp->add_option("--overlay", spatial.overlay_path, "Write an overlay image")->needs(sp_image);
    sp->add_option("--color", spatial.color, "Overlay highlight color R,G,B");
    sp->add_flag("--oracle", spatial.oracle, "Evaluate S by the exhaustive subset oracle");
    add_formula_options(sp, spatial.formula);
    sp->final_callback([&] {
        if (spatial.space_file.empty() && spatial.image_file.empty())
            throw CLI::RequiredError("spatial needs --space or --image");
    });

    StArgs st;
    auto* stc = app.add_subcommand("st", "Check a spatio-temporal formula on a snapshot model");
    stc->add_option("--model", st.model_file, "Snapshot model file")->required();
    stc->add_option("--direction", st.direction, "forward|inverse|symmetric");
    stc->add_flag("--oracle", st.oracle, "Evaluate S by the exhaustive subset oracle");
    stc->add_flag("--all-states", st.all_states, "Report satisfying points for every kripke state");
    add_formula_options(stc, st.formula);

    MfArgs mf;
    auto* mfc = app.add_subcommand("mf", "Mean-field population model analyses");
    mfc->require_subcommand(1);

    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", mf.model_file, "Population model file")->required();
    };
    auto* trace = mfc->add_subcommand("trace", "Mean-field occupancy trajectory (CSV)");
    add_model(trace);
    trace->add_option("--horizon", mf.horizon, "Number of steps")->required();
    trace->add_option("--out", mf.out_path, "CSV output path (default stdout)");

    auto* check = mfc->add_subcommand("check", "On-the-fly bounded PCTL check");
    add_model(check);
    check->add_option("--start", mf.start_state, "Tagged object start state");
    check->add_flag("--oracle", mf.oracle, "Use the naive time-expanded oracle");
    add_formula_options(check, mf.formula);

    auto* simulate = mfc->add_subcommand("simulate", "Fast simulation of tagged objects (CSV)");
    add_model(simulate);
    simulate->add_option("--tagged", mf.tagged, "Number of tagged objects")->required();
    simulate->add_option("--seed", mf.seed, "RNG seed")->required();
    simulate->add_option("--horizon", mf.horizon, "Number of steps")->required();
    simulate->add_option("--start", mf.start_state, "Tagged object start state");
    simulate->add_option("--out", mf.out_path, "CSV output path (default stdout)");

    auto* exact = mfc->add_subcommand("exact", "Exact count-vector chain expectation (CSV)");
    add_model(exact);
    exact->add_option("--N", mf.population, "Population size (default: model file)");
    exact->add_option("--horizon", mf.horizon, "Number of steps")->required();
    exact->add_option("--out", mf.out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (sp->parsed()) return run_spatial(spatial);
        if (stc->parsed()) return run_st(st);
        if (trace->parsed()) return run_mf_trace(mf);
        if (check->parsed()) return run_mf_check(mf);
        if (simulate->parsed()) return run_mf_simulate(mf);
        if (exact->parsed()) return run_mf_exact(mf);
    } catch (const casmc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string caret = e.caret_diagnostic();
        if (!caret.empty()) std::cerr << "  " << e.source_line() << "\n  "
                                      << std::string(e.column() > 0 ? e.column() - 1 : 0, ' ')
                                      << "^\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const casmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
