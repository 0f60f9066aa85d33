// Command-line front end: validate, lay out and render JSON graphs.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "layr/errors.hpp"
#include "layr/io.hpp"
#include "layr/layout.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailed = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layered graph layout for JSON graph documents."};
    std::string input;
    std::string output = "-";
    std::string svg;
    std::string algorithm;
    std::vector<std::string> options;
    bool validate_only = false;
    bool stats = false;
    bool trace = false;
    app.add_option("input", input, "Input document, or - for standard input")->required();
    app.add_option("-o,--output", output, "Output JSON path (default: standard output)");
    app.add_option("--svg", svg, "Also write an SVG rendering here");
    app.add_option("--algorithm", algorithm, "Layout algorithm of the root (default: layered)");
    app.add_option("--option", options, "Root layout option as key=value (repeatable)");
    app.add_flag("--validate", validate_only, "Parse and validate only");
    app.add_flag("--stats", stats, "Print crossings, bends, area and time to standard error");
    app.add_flag("--trace", trace, "Log each pipeline step to standard error");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kFailed;
    }

    layr::LayoutGraph graph;
    try {
        graph = layr::parse(read_input(input));
        if (!algorithm.empty()) graph.root.options.set_from_string(layr::opt::kAlgorithm, algorithm);
        for (const std::string& kv : options) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw layr::OptionError("--option expects key=value, got '" + kv + "'");
            graph.root.options.set_from_string(kv.substr(0, eq), kv.substr(eq + 1));
        }
        const auto problems = layr::validate(graph);
        if (!problems.empty()) throw layr::ValidationError(problems);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    if (validate_only) return kOk;

    try {
        layr::LevelObserver observer;
        if (trace) {
            observer = [](const layr::Node& level, const layr::TraceEntry& entry) {
                std::cerr << "[" << level.id << "] " << layr::format_trace(entry) << "\n";
            };
        }
        const auto start = std::chrono::steady_clock::now();
        const layr::LayoutStats result = layr::layout(graph, observer);
        const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

        write_output(output, layr::serialize(graph));
        if (!svg.empty()) write_output(svg, layr::render_svg(graph));
        if (stats) {
            std::ostringstream line;
            line << "crossings=" << result.crossings << " bends=" << result.bends << " area=" << result.width << "x"
                 << result.height << " time_ms=" << static_cast<long long>(elapsed.count() + 0.5);
            std::cerr << line.str() << "\n";
        }
    } catch (const layr::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "layout failed: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
