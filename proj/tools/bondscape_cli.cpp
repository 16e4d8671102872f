// Command line front end for the bondscape simulator.
//
//   bondscape run --preset hp1 --epochs 100 --seed 42 --jobs 4 --out results/
//   bondscape stats results/epochs.csv --column trade_pct
//   bondscape reference-check
//   bondscape landscape --out landscape.csv
//
// Exit codes: 0 success, 1 usage or runtime error, 2 reference check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bondscape/bondscape.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BONDSCAPE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("BONDSCAPE_SEED is not a valid integer");
        }
    }
    return 42;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

// Pulls one numeric column out of a headered CSV file.
std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(path + " is empty");
    const std::vector<std::string> header = split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == column) {
            col = i;
            break;
        }
    }
    if (col == header.size())
        throw std::invalid_argument("no column named \"" + column + "\" in " + path);
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::invalid_argument(path + ": wrong field count on line " +
                                        std::to_string(line_no));
        try {
            values.push_back(std::stod(fields[col]));
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ": non-numeric value on line " +
                                        std::to_string(line_no));
        }
    }
    return values;
}

int run_command(const std::string& preset_name, int epochs, std::uint64_t seed, int jobs,
                const std::string& out_dir, const std::string& config_path, int bins,
                bool trace) {
    bondscape::ModelConfig config =
        bondscape::preset_config(bondscape::preset_from_string(preset_name));
    if (!config_path.empty())
        config = bondscape::load_config_overrides(std::move(config), config_path);
    config.record_trace = trace;
    const bondscape::ExperimentResult result =
        bondscape::run_experiment(config, preset_name, epochs, seed, jobs);
    bondscape::write_outputs(result, out_dir, bins);
    std::cout << "preset " << result.preset_name << ": " << result.n_epochs
              << " epochs, median trade pct "
              << bondscape::format_double(result.trade_pct_stats.median) << ", mean lifespan "
              << bondscape::format_double(result.lifespan_stats.mean) << ", outputs in "
              << out_dir << "\n";
    return 0;
}

int stats_command(const std::string& path, const std::string& column) {
    const std::vector<double> values = read_csv_column(path, column);
    if (values.empty()) throw std::invalid_argument(path + " has no data rows");
    const bondscape::SummaryStats s = bondscape::summary_stats(values);
    std::cout << bondscape::to_json(s).dump(2) << "\n";
    return 0;
}

int reference_check_command() {
    bool all_ok = true;
    for (const bondscape::ReferenceCheckLine& line : bondscape::reference_check()) {
        std::cout << (line.ok ? "ok   " : "FAIL ") << line.field << ": got "
                  << bondscape::format_double(line.actual) << ", want "
                  << bondscape::format_double(line.expected) << " +/- "
                  << bondscape::format_double(line.tolerance) << "\n";
        all_ok = all_ok && line.ok;
    }
    std::cout << (all_ok ? "reference check passed" : "reference check FAILED") << "\n";
    return all_ok ? 0 : 2;
}

int landscape_command(const std::string& out_path, const std::string& config_path) {
    bondscape::ModelConfig config;
    if (!config_path.empty())
        config = bondscape::load_config_overrides(std::move(config), config_path);
    const bondscape::Landscape landscape = bondscape::generate_landscape(config);
    std::ofstream os(out_path);
    if (!os) throw std::invalid_argument("cannot write " + out_path);
    landscape.write_csv(os);
    const bondscape::Resources totals = landscape.totals();
    std::cout << "wrote " << out_path << " (" << bondscape::format_double(totals.bonds)
              << " bonds, " << bondscape::format_double(totals.cash) << " cash)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bondscape: an agent-based OTC bond market simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a simulation campaign and write its outputs");
    std::string preset;
    int epochs = 100;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1;
    std::string out_dir;
    std::string config_path;
    int bins = 10;
    bool trace = false;
    run->add_option("--preset", preset, "campaign preset")
        ->required()
        ->check(CLI::IsMember({"hp1", "hp2", "hp3", "hp4"}));
    run->add_option("--epochs", epochs, "number of epochs")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "master seed (default: BONDSCAPE_SEED env or 42)")
        ->each([&](const std::string&) { seed_given = true; });
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--config", config_path, "JSON file with config overrides")
        ->check(CLI::ExistingFile);
    run->add_option("--bins", bins, "histogram bin count")->check(CLI::PositiveNumber);
    run->add_flag("--trace", trace, "also write the per-step agent trace");

    // stats
    auto* stats = app.add_subcommand("stats", "summary statistics of one CSV column");
    std::string stats_file;
    std::string column;
    stats->add_option("file", stats_file, "CSV file")->required();
    stats->add_option("--column", column, "column name")->required();

    // reference-check
    app.add_subcommand("reference-check",
                       "verify the embedded reference series statistics");

    // landscape
    auto* landscape = app.add_subcommand("landscape", "write the generated client grid");
    std::string landscape_out;
    std::string landscape_config;
    landscape->add_option("--out", landscape_out, "output CSV file")->required();
    landscape->add_option("--config", landscape_config, "JSON file with config overrides")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run->parsed()) {
            if (!seed_given) seed = default_seed();
            return run_command(preset, epochs, seed, jobs, out_dir, config_path, bins, trace);
        }
        if (stats->parsed()) return stats_command(stats_file, column);
        if (app.get_subcommand("reference-check")->parsed()) return reference_check_command();
        if (landscape->parsed()) return landscape_command(landscape_out, landscape_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
