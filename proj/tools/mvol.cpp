#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mvol/cli.hpp"

using namespace mvol;

int main(int argc, char** argv) {
    CLI::App app{"Exact normalized volumes, mixed volumes and BKK bounds"};
    app.require_subcommand(1);

    cli::JobSpec spec;
    std::string input, out_path, inline_json;
    const std::map<std::string, Engine> engines = {{"ie", Engine::ie}, {"cells", Engine::cells}};
    const std::map<std::string, cli::Format> formats = {{"json", cli::Format::json}, {"plain", cli::Format::plain}};

    app.add_option("--engine", spec.engine, "Mixed volume engine")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case))
        ->option_text("ie|cells [ie]");
    app.add_option("--seed", spec.seed, "Seed for random liftings and coefficients")->default_str("0");
    app.add_option("--format", spec.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->option_text("json|plain [json]");
    app.add_option("--out", out_path, "Write the result to this file instead of stdout");
    app.add_option("--json", inline_json, "Inline JSON input instead of a file or stdin");

    const std::map<cli::Command, std::string> help = {
        {cli::Command::volume, "Normalized volume of a point configuration"},
        {cli::Command::mixed_volume, "Mixed volume of a polytope tuple"},
        {cli::Command::reduce, "Simplices of the volume-to-mixed-volume reduction"},
        {cli::Command::verify, "Check nvol(conv P) = mvol of the reduction simplices"},
        {cli::Command::bkk, "BKK bound (and Kushnirenko bound when supports agree) of a square system"},
        {cli::Command::initial, "Initial system with respect to a direction"},
        {cli::Command::bench, "CSV timings for box, simplex and segment tuples"}};
    for (const auto& [name, cmd] : cli::command_names()) {
        auto* sub = app.add_subcommand(name, help.at(cmd))->fallthrough();
        sub->callback([&spec, cmd = cmd] { spec.command = cmd; });
        if (cmd == cli::Command::bench)
            sub->add_option("--max-size", spec.bench_max_size, "Largest instance size")->default_str("5");
        else
            sub->add_option("input", input, "JSON input file (stdin when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitParse;
    }
    if (!input.empty()) spec.input_path = input;
    if (!inline_json.empty()) spec.inline_json = inline_json;

    const auto result = cli::run(spec);
    if (result.status != cli::kExitOk) {
        std::cerr << "mvol: " << result.error << "\n";
        return result.status;
    }
    if (out_path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "mvol: cannot write " << out_path << "\n";
            return 1;
        }
        out << result.output;
    }
    return 0;
}
