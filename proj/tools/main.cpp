// sgvq command-line front end. Pipeline stages hand off through files in
// the output directory:
//   ingest     captions.json        -> frames/frame_NNNN.json, ingest_summary.json
//   framesim   frames/              -> framesim.csv, framesim_summary.json
//   keyframes  framesim.csv         -> keyframes.json
//   aggregate  frames/ (+series)    -> aggregate.json
//   videosim   aggregate files      -> videosim.csv
//   stats      aggregate.json       -> stats.csv
//   query/eval aggregate.json       -> stdout / eval report
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgvq/sgvq.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CliError{code, message};
}

int exit_code_for(int status) {
    switch (status) {
    case SGVQ_ERR_VALIDATION:
    case SGVQ_ERR_PARSE:
    case SGVQ_ERR_NOT_FOUND:
        return 2;
    case SGVQ_ERR_CONFIG:
        return 3;
    case SGVQ_ERR_NETWORK:
        return 4;
    default:
        return 1;
    }
}

void check(int status) {
    if (status != SGVQ_OK) fail(exit_code_for(status), sgvq_last_error());
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    sgvq_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(2, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(1, "cannot write file: " + path.string());
    out << content;
}

using GraphPtr = std::unique_ptr<sgvq_graph, decltype(&sgvq_graph_free)>;
using AggPtr = std::unique_ptr<sgvq_aggregate, decltype(&sgvq_aggregate_free)>;

GraphPtr load_graph(const std::string& path) {
    sgvq_graph* g = nullptr;
    check(sgvq_graph_from_json(read_file(path).c_str(), &g));
    return {g, &sgvq_graph_free};
}

AggPtr load_aggregate(const std::string& path) {
    sgvq_aggregate* a = nullptr;
    check(sgvq_aggregate_from_json(read_file(path).c_str(), &a));
    return {a, &sgvq_aggregate_free};
}

std::vector<GraphPtr> load_frame_graphs(const fs::path& out_dir) {
    fs::path dir = out_dir / "frames";
    if (!fs::is_directory(dir))
        fail(2, "no frame graphs in " + dir.string() + "; run ingest first");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<GraphPtr> frames;
    for (const auto& f : files) frames.push_back(load_graph(f.string()));
    if (frames.empty())
        fail(2, "no frame graphs in " + dir.string() + "; run ingest first");
    return frames;
}

std::vector<const sgvq_graph*> raw(const std::vector<GraphPtr>& frames) {
    std::vector<const sgvq_graph*> out;
    for (const auto& f : frames) out.push_back(f.get());
    return out;
}

std::vector<double> read_series_csv(const fs::path& path) {
    if (!fs::exists(path))
        fail(2, "missing " + path.string() + "; run framesim first");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> scores;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t c1 = line.find(',');
        size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            fail(2, "malformed series CSV line: " + line);
        scores.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    return scores;
}

struct Options {
    std::string out_dir = "sgvq_out";
    std::string measure = "spectral";
    std::string lexicon;
    size_t k = 1;
    double theta = -1.0; // < 0: ByCount mode
    size_t m = 5;
    double threshold = 0.5;
    double min_confidence = 0.0;
    double iou = 0.5;
    size_t mcs_max_nodes = 30;
    long mcs_time_limit_ms = 5000;
    std::string captions_endpoint;
};

const char* lexicon_arg(const Options& opt) {
    return opt.lexicon.empty() ? nullptr : opt.lexicon.c_str();
}

int measure_code(const Options& opt) {
    if (opt.measure == "spectral") return SGVQ_MEASURE_SPECTRAL;
    if (opt.measure == "mcs") return SGVQ_MEASURE_MCS;
    fail(3, "unknown measure: " + opt.measure);
}

void cmd_ingest(const Options& opt, const std::string& captions_path) {
    sgvq_captions* caps = nullptr;
    check(sgvq_captions_from_json(read_file(captions_path).c_str(), &caps));
    std::unique_ptr<sgvq_captions, decltype(&sgvq_captions_free)> guard(
        caps, &sgvq_captions_free);

    size_t n = 0;
    check(sgvq_captions_frame_count(caps, &n));
    char* vid = nullptr;
    check(sgvq_captions_video_id(caps, &vid));
    std::string video_id = take_string(vid);

    size_t total_nodes = 0, total_edges = 0;
    for (size_t i = 0; i < n; ++i) {
        sgvq_graph* g = nullptr;
        check(sgvq_build_frame_graph(caps, i, opt.min_confidence, opt.iou,
                                     lexicon_arg(opt), &g));
        GraphPtr graph(g, &sgvq_graph_free);
        size_t nodes = 0, edges = 0;
        check(sgvq_graph_node_count(g, &nodes));
        check(sgvq_graph_edge_count(g, &edges));
        total_nodes += nodes;
        total_edges += edges;
        int frame_index = 0;
        check(sgvq_captions_frame_index(caps, i, &frame_index));
        char* body = nullptr;
        check(sgvq_graph_to_json(g, &body));
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04d.json", frame_index);
        write_file(fs::path(opt.out_dir) / "frames" / name, take_string(body));
    }
    json summary = {{"video_id", video_id},
                    {"frames", n},
                    {"nodes", total_nodes},
                    {"edges", total_edges}};
    write_file(fs::path(opt.out_dir) / "ingest_summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
}

void cmd_fetch_captions(const Options& opt, const std::string& image_path) {
    char* out = nullptr;
    check(sgvq_fetch_captions(image_path.c_str(),
                              opt.captions_endpoint.empty()
                                  ? nullptr
                                  : opt.captions_endpoint.c_str(),
                              nullptr, &out));
    std::cout << take_string(out) << "\n";
}

void cmd_framesim(const Options& opt) {
    auto frames = load_frame_graphs(opt.out_dir);
    auto ptrs = raw(frames);
    char* csv = nullptr;
    check(sgvq_frame_sim_series_csv(ptrs.data(), ptrs.size(), measure_code(opt),
                                    opt.mcs_max_nodes, opt.mcs_time_limit_ms,
                                    &csv));
    std::string body = take_string(csv);
    write_file(fs::path(opt.out_dir) / "framesim.csv", body);

    std::vector<double> scores;
    {
        std::istringstream in(body);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            size_t c1 = line.find(',');
            size_t c2 = line.find(',', c1 + 1);
            scores.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
        }
    }
    double mean = 0.0;
    for (double s : scores) mean += s;
    if (!scores.empty()) mean /= double(scores.size());
    json summary = {{"measure", opt.measure},
                    {"boundaries", scores.size()},
                    {"mean_similarity", mean}};
    write_file(fs::path(opt.out_dir) / "framesim_summary.json",
               summary.dump(2) + "\n");
    if (scores.empty())
        std::cerr << "warning: fewer than two frames, empty similarity series\n";
    std::cout << summary.dump(2) << "\n";
}

void cmd_keyframes(const Options& opt) {
    auto scores = read_series_csv(fs::path(opt.out_dir) / "framesim.csv");
    char* out = nullptr;
    if (opt.theta >= 0) {
        check(sgvq_select_keyframes_by_threshold(scores.data(), scores.size(),
                                                 opt.theta, &out));
    } else {
        if (opt.k > scores.size())
            std::cerr << "warning: k exceeds boundary count, selecting all frames\n";
        check(sgvq_select_keyframes_by_count(scores.data(), scores.size(), opt.k,
                                             &out));
    }
    std::string body = take_string(out);
    write_file(fs::path(opt.out_dir) / "keyframes.json", body + "\n");
    std::cout << body << "\n";
}

void cmd_aggregate(const Options& opt, const std::string& method) {
    auto frames = load_frame_graphs(opt.out_dir);
    auto ptrs = raw(frames);
    sgvq_aggregate* agg = nullptr;
    if (method == "nodesim") {
        check(sgvq_aggregate_nodesim(ptrs.data(), ptrs.size(), opt.m,
                                     opt.threshold, &agg));
    } else if (method == "bag") {
        check(sgvq_aggregate_bag(ptrs.data(), ptrs.size(), &agg));
    } else if (method == "keyframe") {
        auto scores = read_series_csv(fs::path(opt.out_dir) / "framesim.csv");
        check(sgvq_aggregate_keyframes(ptrs.data(), ptrs.size(), scores.data(),
                                       scores.size(), opt.theta < 0 ? 1 : 0,
                                       opt.k, opt.theta, opt.m, opt.threshold,
                                       &agg));
    } else {
        fail(3, "unknown aggregation method: " + method);
    }
    AggPtr guard(agg, &sgvq_aggregate_free);
    char* body = nullptr;
    check(sgvq_aggregate_to_json(agg, &body));
    write_file(fs::path(opt.out_dir) / "aggregate.json", take_string(body));
    size_t nodes = 0, edges = 0;
    check(sgvq_aggregate_node_count(agg, &nodes));
    check(sgvq_aggregate_edge_count(agg, &edges));
    json summary = {{"method", method}, {"nodes", nodes}, {"edges", edges}};
    std::cout << summary.dump(2) << "\n";
}

void cmd_videosim(const Options& opt, const std::vector<std::string>& paths) {
    std::vector<AggPtr> aggs;
    std::vector<std::string> ids;
    for (const auto& p : paths) {
        aggs.push_back(load_aggregate(p));
        ids.push_back(fs::path(p).stem().string());
    }
    std::vector<const sgvq_aggregate*> ptrs;
    std::vector<const char*> id_ptrs;
    for (size_t i = 0; i < aggs.size(); ++i) {
        ptrs.push_back(aggs[i].get());
        id_ptrs.push_back(ids[i].c_str());
    }
    char* csv = nullptr;
    check(sgvq_video_sim_matrix_csv(ptrs.data(), id_ptrs.data(), ptrs.size(),
                                    measure_code(opt), opt.mcs_max_nodes,
                                    opt.mcs_time_limit_ms, &csv));
    std::string body = take_string(csv);
    write_file(fs::path(opt.out_dir) / "videosim.csv", body);
    std::cout << body;
}

void cmd_stats(const Options& opt, std::string path) {
    if (path.empty()) {
        path = (fs::path(opt.out_dir) / "aggregate.json").string();
        if (!fs::exists(path))
            fail(2, "missing " + path + "; run aggregate first");
    }
    auto agg = load_aggregate(path);
    char* csv = nullptr;
    check(sgvq_aggregate_degree_stats_csv(agg.get(), &csv));
    std::string body = take_string(csv);
    write_file(fs::path(opt.out_dir) / "stats.csv", body);
    std::cout << body;
}

void cmd_query(const Options& opt, const std::string& aggregate_path,
               const std::string& question, bool repl) {
    auto agg = load_aggregate(aggregate_path);
    auto answer_one = [&](const std::string& q) {
        char* out = nullptr;
        int status = sgvq_answer(agg.get(), q.c_str(), lexicon_arg(opt), &out);
        if (status != SGVQ_OK) {
            if (!repl) fail(exit_code_for(status), sgvq_last_error());
            json err = {{"question", q}, {"error", sgvq_last_error()}};
            std::cout << err.dump() << "\n";
            return;
        }
        std::cout << take_string(out) << "\n";
    };
    if (repl) {
        std::string line;
        while (std::getline(std::cin, line)) {
            if (line.empty()) continue;
            answer_one(line);
        }
    } else {
        answer_one(question);
    }
}

void cmd_eval(const Options& opt, const std::string& aggregate_path,
              const std::string& annotations_path) {
    auto agg = load_aggregate(aggregate_path);
    char* out = nullptr;
    check(sgvq_eval(agg.get(), read_file(annotations_path).c_str(),
                    lexicon_arg(opt), &out));
    std::string body = take_string(out);
    write_file(fs::path(opt.out_dir) / "eval_report.json", body + "\n");
    json report = json::parse(body);
    std::cout << body << "\n";
    std::printf("%-12s %8s %8s\n", "kind", "total", "accuracy");
    for (auto it = report["per_kind"].begin(); it != report["per_kind"].end(); ++it)
        std::printf("%-12s %8zu %8.3f\n", it.key().c_str(),
                    it.value()["total"].get<size_t>(),
                    it.value()["accuracy"].get<double>());
    std::printf("%-12s %8zu %8.3f\n", "overall",
                report["total"].get<size_t>(), report["overall"].get<double>());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene-graph video query pipeline"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--out", opt.out_dir, "output directory for stage artifacts");
    app.add_option("--measure", opt.measure, "similarity measure: spectral|mcs");
    app.add_option("--lexicon", opt.lexicon, "extra POS lexicon file (word<TAB>TAG)");
    app.add_option("--k", opt.k, "number of key frames (largest-drop mode)");
    app.add_option("--theta", opt.theta, "key-frame similarity threshold mode");
    app.add_option("--m", opt.m, "aggregation lookback window in frames");
    app.add_option("--threshold", opt.threshold, "NodeSim merge threshold");
    app.add_option("--min-confidence", opt.min_confidence,
                   "drop captions below this confidence");
    app.add_option("--iou", opt.iou, "same-frame subject merge IoU threshold");
    app.add_option("--mcs-max-nodes", opt.mcs_max_nodes, "MCS node budget");
    app.add_option("--mcs-time-limit-ms", opt.mcs_time_limit_ms, "MCS time budget");
    app.add_option("--captions-endpoint", opt.captions_endpoint,
                   "dense-captioning endpoint URL (or SGVQ_CAPTIONS_URL)");

    std::string captions_path, image_path, method = "nodesim";
    std::string aggregate_path, question, annotations_path, stats_path;
    std::vector<std::string> videosim_paths;
    bool repl = false;

    auto* ingest = app.add_subcommand("ingest", "captions file -> frame graphs");
    ingest->add_option("captions", captions_path, "captions JSON file")->required();

    auto* fetch = app.add_subcommand("fetch-captions",
                                     "caption one image via the configured endpoint");
    fetch->add_option("image", image_path, "image file")->required();

    app.add_subcommand("framesim", "consecutive-frame similarity series");
    app.add_subcommand("keyframes", "select key frames from the series");

    auto* aggregate = app.add_subcommand("aggregate", "build the video graph");
    aggregate->add_option("--method", method, "nodesim|bag|keyframe");

    auto* videosim = app.add_subcommand("videosim", "pairwise video similarity");
    videosim->add_option("aggregates", videosim_paths, "aggregate JSON files")
        ->required();

    auto* stats = app.add_subcommand("stats", "degree histogram of a video graph");
    stats->add_option("aggregate", stats_path, "aggregate JSON file (default: --out)");

    auto* query = app.add_subcommand("query", "answer questions");
    query->add_option("aggregate", aggregate_path, "aggregate JSON file")->required();
    query->add_option("question", question, "question text");
    query->add_flag("--repl", repl, "read questions line by line until EOF");

    auto* eval = app.add_subcommand("eval", "score answers against annotations");
    eval->add_option("aggregate", aggregate_path, "aggregate JSON file")->required();
    eval->add_option("annotations", annotations_path, "annotations JSON file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) {
            cmd_ingest(opt, captions_path);
        } else if (fetch->parsed()) {
            cmd_fetch_captions(opt, image_path);
        } else if (app.get_subcommand("framesim")->parsed()) {
            cmd_framesim(opt);
        } else if (app.get_subcommand("keyframes")->parsed()) {
            cmd_keyframes(opt);
        } else if (aggregate->parsed()) {
            cmd_aggregate(opt, method);
        } else if (videosim->parsed()) {
            cmd_videosim(opt, videosim_paths);
        } else if (stats->parsed()) {
            cmd_stats(opt, stats_path);
        } else if (query->parsed()) {
            if (!repl && question.empty())
                fail(3, "query needs a question or --repl");
            cmd_query(opt, aggregate_path, question, repl);
        } else if (eval->parsed()) {
            cmd_eval(opt, aggregate_path, annotations_path);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
